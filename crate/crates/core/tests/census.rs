use asmlab::census::{parse_checks, tabulate, CensusConfig};
use tempfile::TempDir;

fn config(n: usize, checks: &str) -> CensusConfig {
    let mut cfg = CensusConfig::new(n);
    cfg.checks = parse_checks(checks).unwrap();
    cfg
}

fn without_runtime(line: &str) -> &str {
    line.rsplit_once(',').unwrap().0
}

#[test]
fn job_count_does_not_change_results() {
    let mut rows = Vec::new();
    for jobs in [1, 4, 16] {
        let mut cfg = config(5, "km_vd");
        cfg.jobs = jobs;
        cfg.shard_size = 50;
        let outcome = tabulate(&cfg).unwrap();
        let asms: Vec<_> = outcome.reports.iter().map(|r| r.asm.clone()).collect();
        let verdicts: Vec<_> = outcome.reports.iter().map(|r| (r.cm, r.km_vd)).collect();
        rows.push((
            without_runtime(&outcome.row.to_csv_line()).to_owned(),
            asms,
            verdicts,
        ));
    }
    assert_eq!(rows[0].0, "5,429,328,101,35,2,");
    assert!(rows.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn warm_cache_recomputes_nothing() {
    let dir = TempDir::new().unwrap();
    let mut cfg = config(5, "cm");
    cfg.cache_dir = Some(dir.path().to_path_buf());
    cfg.jobs = 4;
    let cold = tabulate(&cfg).unwrap();
    assert_eq!((cold.shards_computed, cold.shards_cached), (2, 0));
    let warm = tabulate(&cfg).unwrap();
    assert_eq!((warm.shards_computed, warm.shards_cached), (0, 2));
    assert_eq!(cold.row.to_csv_line(), warm.row.to_csv_line());
    assert_eq!(cold.reports, warm.reports);
}

#[test]
fn cache_is_keyed_by_configuration() {
    let dir = TempDir::new().unwrap();
    let mut cm = config(4, "cm");
    cm.cache_dir = Some(dir.path().to_path_buf());
    let mut modular = cm.clone();
    modular.field = "p=32003".parse().unwrap();
    assert_ne!(cm.cache_key(), modular.cache_key());
    tabulate(&cm).unwrap();
    let second = tabulate(&modular).unwrap();
    assert_eq!(second.shards_cached, 0);
    assert_eq!(without_runtime(&second.row.to_csv_line()), "4,42,39,3,,,");
}

#[test]
fn corrupt_shards_are_recomputed() {
    let dir = TempDir::new().unwrap();
    let mut cfg = config(4, "cm");
    cfg.cache_dir = Some(dir.path().to_path_buf());
    let cold = tabulate(&cfg).unwrap();
    let shard = std::fs::read_dir(dir.path().join(cfg.cache_key()))
        .unwrap()
        .next()
        .unwrap()
        .unwrap();
    std::fs::write(shard.path(), "{ not json").unwrap();
    let again = tabulate(&cfg).unwrap();
    assert_eq!(again.shards_computed, 1);
    assert_eq!(cold.row.to_csv_line(), again.row.to_csv_line());
}

#[test]
fn filter_restricts_the_census() {
    let mut cfg = config(5, "km_vd");
    cfg.filter = Some("a11=1".parse().unwrap());
    let row = tabulate(&cfg).unwrap().row;
    assert_eq!(row.total, 42);
    assert_eq!(row.km_vd_fail, Some(2));
}

//! ASCII drawing of an ASM with its diagram.
//!
//! Each `1` (`*`) sends a line east and south, and each `-1` (`o`) ends the
//! lines arriving from the west and north. Cells crossed by no line form the
//! diagram: `E` marks essential cells, `.` the others.

use crate::asm::{diagram_lines, essential_set, Asm};
use crate::cells::Cell;

pub fn render_diagram(a: &Asm) -> String {
    let n = a.n();
    let lines = diagram_lines(a);
    let ess = essential_set(a);
    let mut out = String::with_capacity(n * (n + 1));
    for i in 1..=n {
        for j in 1..=n {
            let (horizontal, vertical) = lines[(i - 1) * n + (j - 1)];
            let ch = match a.get(i, j) {
                1 => '*',
                -1 => 'o',
                _ => match (horizontal, vertical) {
                    (true, true) => '+',
                    (true, false) => '-',
                    (false, true) => '|',
                    (false, false) if ess.contains(Cell::new(i, j)) => 'E',
                    (false, false) => '.',
                },
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

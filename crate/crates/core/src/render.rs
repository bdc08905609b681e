//! Fixed-width ASCII pictures of diagrams: node labels on the top and
//! bottom rows, one horizontal lane per arc in between, bus-diagram style.

use crate::diagram::BrauerDiagram;

const SPACING: usize = 4;

fn column(node_in_row: usize) -> usize {
    (node_in_row - 1) * SPACING
}

/// Renders a diagram as fixed-width ASCII art. Deterministic; arcs are
/// drawn on separate lanes in canonical pair order, corners marked '+',
/// crossings of strokes shown as '+'.
pub fn render(d: &BrauerDiagram) -> String {
    let arcs = d.pairs();
    let width = SPACING * d.k.max(d.ell).max(1);
    let lane_rows = arcs.len();
    let rows = lane_rows + 2;
    let mut grid = vec![vec![' '; width]; rows];

    let put = |grid: &mut Vec<Vec<char>>, r: usize, c: usize, ch: char| {
        let cell = &mut grid[r][c];
        *cell = match (*cell, ch) {
            (' ', _) => ch,
            ('+', _) | (_, '+') => '+',
            ('-', '|') | ('|', '-') => '+',
            _ => ch,
        };
    };

    // top labels
    for t in 1..=d.ell {
        for (offset, ch) in t.to_string().chars().enumerate() {
            let c = column(t) + offset;
            if c < width {
                grid[0][c] = ch;
            }
        }
    }
    // bottom labels
    for b in 1..=d.k {
        for (offset, ch) in b.to_string().chars().enumerate() {
            let c = column(b) + offset;
            if c < width {
                grid[rows - 1][c] = ch;
            }
        }
    }

    for (idx, &(a, b)) in arcs.iter().enumerate() {
        let lane = 1 + idx;
        let col_of = |node: usize| {
            if node <= d.k {
                column(node)
            } else {
                column(node - d.k)
            }
        };
        let (ca, cb) = (col_of(a), col_of(b));
        if ca == cb {
            // a straight strand
            for r in 1..rows - 1 {
                put(&mut grid, r, ca, '|');
            }
            continue;
        }
        // verticals from each endpoint to the lane
        for (node, c) in [(a, ca), (b, cb)] {
            if node <= d.k {
                for r in lane + 1..rows - 1 {
                    put(&mut grid, r, c, '|');
                }
            } else {
                for r in 1..lane {
                    put(&mut grid, r, c, '|');
                }
            }
        }
        // the lane itself
        let (lo, hi) = (ca.min(cb), ca.max(cb));
        put(&mut grid, lane, lo, '+');
        put(&mut grid, lane, hi, '+');
        for c in lo + 1..hi {
            put(&mut grid, lane, c, '-');
        }
    }

    grid.into_iter()
        .map(|row| row.into_iter().collect::<String>().trim_end().to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_cup_over_cap() {
        let e1 = BrauerDiagram::e_i(2, 1).unwrap();
        let art = render(&e1);
        let expected = "\
1   2
+---+
+---+
1   2";
        assert_eq!(art, expected);
    }

    #[test]
    fn renders_crossing() {
        let x = BrauerDiagram::cross();
        let art = render(&x);
        let expected = "\
1   2
+---+
+---+
1   2";
        // both arcs span the full width; the picture shows two lanes
        assert_eq!(art, expected);
    }

    #[test]
    fn renders_identity_strands() {
        let art = render(&BrauerDiagram::identity(2));
        let expected = "\
1   2
|   |
|   |
1   2";
        assert_eq!(art, expected);
    }
}

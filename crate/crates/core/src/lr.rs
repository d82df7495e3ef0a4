//! Littlewood–Richardson coefficients by direct tableau enumeration.
//!
//! This is deliberately independent of the Pieri/Giambelli product code and
//! serves as its oracle.

use crate::partition::{Part, Partition};

/// `c^ν_{λ,μ}`: the number of semistandard fillings of the skew shape `ν/λ`
/// with content `μ` whose reverse reading word (right to left, top to bottom)
/// is a lattice word.  Zero when the shapes are incompatible.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !nu.contains(lambda) || nu.size() != lambda.size() + mu.size() {
        return 0;
    }
    if mu.is_empty() {
        return 1;
    }
    let rows = nu.len();
    // filled[r][c] for c in lambda_r..nu_r, stored per row
    let mut grid: Vec<Vec<Part>> = (0..rows)
        .map(|r| vec![0; (nu.part(r) - lambda.part(r)) as usize])
        .collect();
    let mut counts = vec![0 as Part; mu.len() + 1];
    let mut total = 0;
    fill(lambda, mu, 0, None, &mut grid, &mut counts, &mut total);
    total
}

/// Entry of the cell above `(row, col)` if that cell is in the skew shape.
fn above(lambda: &Partition, grid: &[Vec<Part>], row: usize, col: Part) -> Option<Part> {
    if row == 0 {
        return None;
    }
    let start = lambda.part(row - 1);
    let prev = &grid[row - 1];
    if col >= start && ((col - start) as usize) < prev.len() {
        Some(prev[(col - start) as usize])
    } else {
        None
    }
}

fn fill(
    lambda: &Partition,
    mu: &Partition,
    row: usize,
    pos: Option<usize>,
    grid: &mut Vec<Vec<Part>>,
    counts: &mut Vec<Part>,
    total: &mut u64,
) {
    if row == grid.len() {
        *total += 1;
        return;
    }
    // fill each row right to left; `pos` is the next cell index within the row
    let pos = match pos {
        Some(p) => p,
        None if grid[row].is_empty() => {
            return fill(lambda, mu, row + 1, None, grid, counts, total);
        }
        None => grid[row].len() - 1,
    };
    let col = lambda.part(row) + pos as Part;
    // row weakly increases left to right, so going left the entry can only shrink
    let max_row = if pos + 1 < grid[row].len() {
        grid[row][pos + 1]
    } else {
        mu.len() as Part
    };
    let min_col = above(lambda, grid, row, col).map_or(1, |a| a + 1);
    for e in min_col..=max_row {
        let ei = e as usize;
        if counts[ei] >= mu.part(ei - 1) {
            continue;
        }
        if e > 1 && counts[ei] + 1 > counts[ei - 1] {
            continue;
        }
        counts[ei] += 1;
        grid[row][pos] = e;
        let next = if pos == 0 { None } else { Some(pos - 1) };
        let next_row = if pos == 0 { row + 1 } else { row };
        fill(lambda, mu, next_row, next, grid, counts, total);
        counts[ei] -= 1;
    }
    grid[row][pos] = 0;
}

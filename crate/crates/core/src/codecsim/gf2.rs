//! Dense GF(2) rows packed into `u128`; bit `j` is column `j`.

pub type Row = u128;

pub const MAX_LEN: usize = 128;

#[inline]
pub fn bit(row: Row, j: usize) -> bool {
    (row >> j) & 1 == 1
}

#[inline]
pub fn mask(len: usize) -> Row {
    if len >= MAX_LEN {
        Row::MAX
    } else {
        (1u128 << len) - 1
    }
}

/// Reduced row echelon form of `rows`, choosing pivot columns in the order
/// given by `column_order`. Stops once `rows.len()` pivots are found.
///
/// Returns the pivot columns; pivot `i` sits in `rows[i]`, and every other
/// row is zero in that column. The second value counts row XORs performed.
pub fn reduce_in_order(
    rows: &mut [Row],
    column_order: impl IntoIterator<Item = usize>,
) -> (Vec<usize>, u64) {
    let k = rows.len();
    let mut pivots = Vec::with_capacity(k);
    let mut xors = 0u64;
    for col in column_order {
        if pivots.len() == k {
            break;
        }
        let r = pivots.len();
        let Some(found) = (r..k).find(|&i| bit(rows[i], col)) else {
            continue;
        };
        rows.swap(r, found);
        let pivot_row = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && bit(*row, col) {
                *row ^= pivot_row;
                xors += 1;
            }
        }
        pivots.push(col);
    }
    (pivots, xors)
}

pub fn rank(rows: &[Row], len: usize) -> usize {
    let mut work = rows.to_vec();
    reduce_in_order(&mut work, 0..len).0.len()
}

/// Parity-check rows for the row space of a full-rank generator.
pub fn parity_check(generator: &[Row], len: usize) -> Vec<Row> {
    let mut rref = generator.to_vec();
    let (pivots, _) = reduce_in_order(&mut rref, 0..len);
    let mut is_pivot = vec![false; len];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..len)
        .filter(|&j| !is_pivot[j])
        .map(|j| {
            let mut h: Row = 1 << j;
            for (row, &p) in rref.iter().zip(&pivots) {
                if bit(*row, j) {
                    h |= 1 << p;
                }
            }
            h
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_finds_independent_columns() {
        // columns 0 and 1 are equal, so column 1 cannot be a pivot after 0
        let mut rows = vec![0b0111, 0b1011];
        let (pivots, _) = reduce_in_order(&mut rows, [0, 1, 2, 3]);
        assert_eq!(pivots, vec![0, 2]);
        assert!(bit(rows[0], 0) && !bit(rows[1], 0));
        assert!(bit(rows[1], 2) && !bit(rows[0], 2));
    }

    #[test]
    fn parity_check_annihilates_rows() {
        let g = vec![0b1100_0011, 0b0110_1001, 0b0011_1110];
        let h = parity_check(&g, 8);
        assert_eq!(h.len(), 5);
        for row in &g {
            for check in &h {
                assert_eq!((row & check).count_ones() % 2, 0);
            }
        }
        assert_eq!(rank(&h, 8), 5);
    }
}

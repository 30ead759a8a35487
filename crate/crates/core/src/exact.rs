//! Exact integer linear algebra helpers.

/// Rank of an integer matrix, computed by fraction-free (Bareiss) Gaussian
/// elimination. No floating point: every intermediate entry is a minor of
/// the input matrix and the divisions are exact.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();

    let mut rank = 0;
    let mut prev_pivot: i128 = 1;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col];
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let num = m[r][c] * pivot - m[r][col] * m[rank][c];
                debug_assert_eq!(num % prev_pivot, 0, "Bareiss division must be exact");
                m[r][c] = num / prev_pivot;
            }
            m[r][col] = 0;
        }
        prev_pivot = pivot;
        rank += 1;
    }
    rank
}

/// True when the rows are linearly independent over the rationals.
pub fn rows_independent(rows: &[Vec<i64>]) -> bool {
    rank(rows) == rows.len()
}

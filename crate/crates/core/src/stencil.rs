//! Finite-difference weights on arbitrary nodes (Fornberg's recursion).

/// `weights(z, x, m)[k][j]` is the weight of node `x[j]` in the
/// approximation of the `k`-th derivative at `z`, for `k = 0..=m`.
pub fn weights(z: f64, x: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut c = vec![vec![0.0; n]; m + 1];
    if n == 0 {
        return c;
    }
    let mut c1 = 1.0;
    let mut c4 = x[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = x[i] - z;
        for j in 0..i {
            let c3 = x[i] - x[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Weights for the `k`-th derivative at offset 0 using integer offsets,
/// to be divided by `spacing^k` by the caller.
pub fn offset_weights(offsets: &[i32], k: usize) -> Vec<f64> {
    let x: Vec<f64> = offsets.iter().map(|&o| o as f64).collect();
    weights(0.0, &x, k).swap_remove(k)
}

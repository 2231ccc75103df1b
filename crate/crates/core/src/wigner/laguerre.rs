/// Generalized Laguerre polynomial `L_n^k(x)` by the three-term recurrence
/// `(j+1) L_{j+1} = (2j+1+k-x) L_j - (j+k) L_{j-1}`.
pub fn laguerre_assoc(n: u32, k: u32, x: f64) -> f64 {
    let k = k as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + k - x;
    for j in 1..n {
        let j = j as f64;
        let next = ((2.0 * j + 1.0 + k - x) * cur - (j + k) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

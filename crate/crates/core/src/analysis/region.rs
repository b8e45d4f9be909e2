//! Region predicates. Every boundary is excluded.

use num_complex::Complex64;

use super::growth::AlphaVector;

/// `Re(s_{k-l+1} + ... + s_k)` for `l = 1..=k`.
fn tail_real_sums(s: &[Complex64]) -> impl Iterator<Item = (usize, f64)> + '_ {
    let k = s.len();
    (1..=k).map(move |l| (l, s[k - l..].iter().map(|z| z.re).sum()))
}

/// `Re(s_j) > 1 + α_j` for every `j`.
pub fn in_region_zfr(s: &[Complex64], alpha: &AlphaVector) -> bool {
    s.len() == alpha.arity() && s.iter().zip(alpha.values()).all(|(z, a)| z.re > 1.0 + a)
}

/// `Re(s_j) > 1 + r_j` for every `j`: the region where a series with
/// coefficients `O(∏ n_j^{r_j})` converges absolutely, coordinate by coordinate.
pub fn in_region_pointwise(s: &[Complex64], r: &[f64]) -> bool {
    s.len() == r.len() && s.iter().zip(r).all(|(z, r)| z.re > 1.0 + r)
}

/// `Re(s_{k-l+1} + ... + s_k) > l + α_{k-l+1} + ... + α_k` for `l = 1..=k`.
pub fn in_region_zfr2(s: &[Complex64], alpha: &AlphaVector) -> bool {
    let k = s.len();
    k == alpha.arity() && tail_real_sums(s).all(|(l, re)| re > l as f64 + alpha.tail_sum(k - l + 1))
}

/// `Re(s_{k-l+1} + ... + s_k) > l` for `l = 1..=k`: absolute convergence of
/// the Euler-Zagier and star series.
pub fn in_region_abs_ez(s: &[Complex64]) -> bool {
    !s.is_empty() && tail_real_sums(s).all(|(l, re)| re > l as f64)
}

/// Whether every automorphism of `N_{r,c}` fixes a nontrivial element
/// (exact classification): `c = 2kr` with `k ≥ 2` for `r ∈ {2, 3}`, with
/// `k ≥ 1` for `r ≥ 4`.
pub fn formanek_fixed(r: usize, c: usize) -> bool {
    if r < 2 || c == 0 || !c.is_multiple_of(2 * r) {
        return false;
    }
    let k = c / (2 * r);
    if r <= 3 {
        k >= 2
    } else {
        k >= 1
    }
}

/// Sufficient condition for `N_{r,c}` to have the R∞ property:
/// `c ≥ 4r` for `r ∈ {2, 3}`, `c ≥ 2r` for `r ≥ 4`.
pub fn theorem2_rinf(r: usize, c: usize) -> bool {
    match r {
        0 | 1 => false,
        2 | 3 => c >= 4 * r,
        _ => c >= 2 * r,
    }
}

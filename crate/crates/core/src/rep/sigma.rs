use super::multiindex::MultiIndex;

/// Swaps the entries at positions `i - 1` and `i` for every `i ≡ eps (mod 2)`,
/// positions read cyclically. For `n = 3`:
/// `eps = 0`: `(a2, a1, a4, a3, a6, a5)`, `eps = 1`: `(a6, a3, a2, a5, a4, a1)`.
pub fn sigma_perm(eps: u8, a: &MultiIndex) -> MultiIndex {
    let len = a.len();
    let mut out = a.entries().to_vec();
    let first = if eps.is_multiple_of(2) { 2 } else { 1 };
    for i in (first..=len).step_by(2) {
        let (left, right) = ((i + len - 2) % len, i - 1);
        out.swap(left, right);
    }
    MultiIndex::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::multiindex::enumerate_basis;

    #[test]
    fn n3_examples() {
        let a = MultiIndex::new(vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(sigma_perm(0, &a).entries(), &[2, 1, 4, 3, 6, 5]);
        assert_eq!(sigma_perm(1, &a).entries(), &[6, 3, 2, 5, 4, 1]);
    }

    #[test]
    fn involution_preserving_level() {
        for n in 1..4 {
            for a in enumerate_basis(n, 3) {
                for eps in 0..2 {
                    let s = sigma_perm(eps, &a);
                    assert_eq!(s.level(), a.level());
                    assert_eq!(sigma_perm(eps, &s), a);
                }
            }
        }
    }
}

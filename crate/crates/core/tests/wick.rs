//! Normal-ordered substitution `𝓥 → v`, `𝓡 → ∂/∂v` on `Υ` against the Fock
//! pairing and the matrix realization, for all words of length ≤ 3.

use son2::berezin::verify_berezin;

#[test]
fn words_up_to_length_three_n1() {
    let r = verify_berezin(1, 4, 3).unwrap();
    assert!(r.all_passed(), "{r}");
}

#[test]
fn words_up_to_length_three_n2() {
    let r = verify_berezin(2, 3, 3).unwrap();
    assert!(r.all_passed(), "{r}");
}

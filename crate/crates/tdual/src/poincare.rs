//! Transition functions and translation multipliers of the Poincaré bundle
//! and its n-fold twisted versions, as scalars, plus the cochain identities
//! behind the Dixmier-Douady class computations.

use crate::nerve::{cup_dot, Cochain, Nerve, NerveError};
use crate::scalars::{bracket_low, pairing, AffChar, Circle, Int, IntVec, RatVec, ScalarError, SkewIntMat};

/// Transition (x+z, x) ↦ [z, x] of the n-fold Poincaré bundle over 𝕋^{2n}.
pub fn poi_transition(z: &IntVec, x: &RatVec) -> Result<Circle, ScalarError> {
    Ok(Circle::new(pairing(&z.to_rat(), x)?))
}

/// Transition (a+m, a) ↦ ⟨m|B|a⟩_low of the bundle twisted by B.
pub fn poib_transition(m: &IntVec, a: &RatVec, b: &SkewIntMat) -> Result<Circle, ScalarError> {
    Ok(Circle::new(bracket_low(&m.to_rat(), b, a)?))
}

/// Failure of translations by a then a′ to compose to a translation by a+a′.
pub fn translation_defect(b: &SkewIntMat, a: &RatVec, a2: &RatVec) -> Result<Circle, ScalarError> {
    Ok(Circle::new(bracket_low(a, b, a2)?))
}

/// The function x ↦ ⟨x|B|m⟩ by which an integer translation acts.
pub fn integer_translation(b: &SkewIntMat, m: &IntVec) -> Result<AffChar, ScalarError> {
    if b.n() != m.len() {
        return Err(ScalarError::LengthMismatch(b.n(), m.len()));
    }
    Ok(AffChar::new(Circle::zero(), b.mul_int(m)))
}

/// Multiplier relating translation by a+m to translation by a:
/// ⟨·|B|m⟩ − ⟨m|B|a⟩_low.
pub fn zshift_character(b: &SkewIntMat, m: &IntVec, a: &RatVec) -> Result<AffChar, ScalarError> {
    let f = integer_translation(b, m)?;
    let c = translation_defect(b, &m.to_rat(), a)?;
    Ok(&f - &AffChar::constant(c, b.n()))
}

/// Same multiplier computed by translating first by m then by a.
pub fn zshift_character_other_order(b: &SkewIntMat, m: &IntVec, a: &RatVec) -> Result<AffChar, ScalarError> {
    let f = integer_translation(b, m)?.translate(&-a.clone());
    let c = translation_defect(b, a, &m.to_rat())?;
    Ok(&f - &AffChar::constant(c, b.n()))
}

/// Character η_{m,m̂,a}(x, y) = −x·m̂ + m·y − a·m̂ on 𝕋^{2n}.
pub fn eta_character(m: &IntVec, m_hat: &IntVec, a: &RatVec) -> Result<AffChar, ScalarError> {
    if m.len() != m_hat.len() {
        return Err(ScalarError::LengthMismatch(m.len(), m_hat.len()));
    }
    if a.len() != m.len() {
        return Err(ScalarError::LengthMismatch(m.len(), a.len()));
    }
    let c = -m_hat.dot_rat(a);
    Ok(AffChar::new(Circle::new(c), (-m_hat.clone()).concat(m)))
}

/// Both sides of p = q ∪ z, where q = δg̃ in the orientation
/// q_ijk = g̃_ik − g̃_jk − g̃_ij and p is assembled from η̃_ijk = g̃_ij·z_jk.
pub fn dd_cup_sides(nerve: &Nerve, g: &Cochain<IntVec>, z: &Cochain<IntVec>) -> Result<(Cochain<Int>, Cochain<Int>), NerveError> {
    let q = Cochain::from_fn(nerve, 2, |s| {
        let (i, j, k) = (s[0], s[1], s[2]);
        &(g.get(&[i, k]) - g.get(&[j, k])) - g.get(&[i, j])
    });
    let lhs = cup_dot(nerve, &q, z)?;
    let eta = Cochain::from_fn(nerve, 2, |s| g.get(&[s[0], s[1]]).dot(z.get(&[s[1], s[2]])));
    let rhs = Cochain::from_fn(nerve, 3, |s| {
        let (i, j, k, l) = (s[0], s[1], s[2], s[3]);
        eta.get(&[i, k, l]) + eta.get(&[i, j, k]) - eta.get(&[j, k, l]) - eta.get(&[i, j, l])
    });
    if nerve.dim() < 3 {
        return Err(NerveError::DegreeOverflow(3));
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nerve::coboundary;
    use crate::sample::Sampler;
    use crate::scalars::rat;

    #[test]
    fn transition_examples() {
        let z = IntVec::from_i64(&[3, 2]);
        let x = RatVec::from_fracs(&[(1, 4), (1, 7)]);
        assert_eq!(poi_transition(&z, &x).unwrap(), Circle::from_frac(1, 2));
        assert!(poi_transition(&IntVec::zeros(2), &x).unwrap().is_zero());
        let b = SkewIntMat::from_i64(&[&[0, -1], &[1, 0]]).unwrap();
        let a = RatVec::from_fracs(&[(1, 3), (5, 9)]);
        assert_eq!(poib_transition(&IntVec::from_i64(&[0, 1]), &a, &b).unwrap(), Circle::from_frac(1, 3));
        assert!(poib_transition(&IntVec::zeros(2), &a, &b).unwrap().is_zero());
        assert!(poi_transition(&IntVec::zeros(3), &x).is_err());
    }

    #[test]
    fn sampled_identities() {
        let mut s = Sampler::new(40);
        for _ in 0..200 {
            let n = 1 + s.index(3);
            let (z1, z2) = (s.intvec(2 * n), s.intvec(2 * n));
            let x = s.ratvec(2 * n);
            let lhs = poi_transition(&(&z1 + &z2), &x).unwrap();
            let rhs = &poi_transition(&z1, &(&x + &z2.to_rat())).unwrap() + &poi_transition(&z2, &x).unwrap();
            assert_eq!(lhs, rhs);

            let b = s.skew(n);
            let (a, a2, a3) = (s.ratvec(n), s.ratvec(n), s.ratvec(n));
            let d = |u: &RatVec, v: &RatVec| translation_defect(&b, u, v).unwrap();
            assert_eq!(&d(&a, &a2) + &d(&(&a + &a2), &a3), &d(&a2, &a3) + &d(&a, &(&a2 + &a3)));

            let m = s.intvec(n);
            assert_eq!(zshift_character(&b, &m, &a).unwrap(), zshift_character_other_order(&b, &m, &a).unwrap());
            let m2 = s.intvec(n);
            let sum = poib_transition(&(&m + &m2), &a, &b).unwrap();
            assert_eq!(sum, &poib_transition(&m, &a, &b).unwrap() + &poib_transition(&m2, &a, &b).unwrap());

            let (ah, ah2) = (s.ratvec(n), s.ratvec(n));
            let bn = SkewIntMat::poincare_block(n);
            assert_eq!(translation_defect(&bn, &a.concat(&ah), &a2.concat(&ah2)).unwrap(), Circle::new(ah.dot(&a2)));

            let mh = s.intvec(n);
            let eta = eta_character(&m, &mh, &a).unwrap();
            let (xx, yy) = (s.ratvec(n), s.ratvec(n));
            let expect = -mh.dot_rat(&xx) + m.dot_rat(&yy) - mh.dot_rat(&a);
            assert_eq!(eta.eval(&xx.concat(&yy)), Circle::new(expect));
        }
    }

    #[test]
    fn dd_cup_identity_on_four_vertices() {
        let nv = Nerve::full(4);
        let mut s = Sampler::new(12);
        for _ in 0..20 {
            let g = Cochain::from_fn(&nv, 1, |_| s.intvec(2));
            let z = coboundary(&nv, &Cochain::from_fn(&nv, 0, |_| s.intvec(2)));
            let (lhs, rhs) = dd_cup_sides(&nv, &g, &z).unwrap();
            assert_eq!(lhs, rhs);
        }
        let _ = rat(0, 1);
    }
}

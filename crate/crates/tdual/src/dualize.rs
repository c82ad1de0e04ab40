//! Constructive inverse of the left leg: lifts a TB1 cocycle to a TD½
//! cocycle together with a gauge witnessing that its left leg is the input,
//! and lifts TB1 gauges between left legs to TD½ gauges.

use crate::cocycle::{
    apply_gauge_tdhalf, leftleg_tdhalf, solve_e, verify_gauge_tb1, verify_gauge_tdhalf, CocycleError, CocycleTB1,
    CocycleTDhalf, GaugeTB1, GaugeTDhalf,
};
use crate::nerve::{self, coboundary, Cochain, SolveError};
use crate::scalars::{AffChar, Circle, Int, IntVec, Rat, RatVec};

/// Intermediate data of a dualization, kept for audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub m_hat: Cochain<IntVec>,
    pub a_hat: Cochain<RatVec>,
    /// Constants of τ lifted to [0,1).
    pub lifted: Cochain<Rat>,
    /// Coboundary of the lifted constants, a 3-cochain.
    pub delta: Cochain<Rat>,
    pub omega: Cochain<Rat>,
    /// The integers measuring how far the lifted τ-condition is from exact.
    pub eps_int: Cochain<Int>,
    pub t: Cochain<Circle>,
    /// τ minus the left leg's τ; winding zero.
    pub beta: Cochain<Circle>,
    pub witness: GaugeTB1,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dualized {
    pub dual: CocycleTDhalf,
    pub trace: Trace,
}

fn obstructed(e: SolveError, locus: &str) -> CocycleError {
    match e {
        SolveError::Obstructed(o) => CocycleError::Obstructed(o.with_note(locus)),
        other => CocycleError::Precondition(format!("{}: {}", locus, other)),
    }
}

/// Builds a TD½ cocycle whose left leg is gauge equivalent to x.
pub fn dualize(x: &CocycleTB1) -> Result<Dualized, CocycleError> {
    x.validate()?;
    let (nv, n) = (&x.nerve, x.n);
    let m_hat = x.tau.map(|_, t| t.winding.clone());

    // â_ik − â_jk − â_ij = m̂_ijk + B_jk a_ij
    let rhs = m_hat.map(|s, mh| -(&mh.to_rat() + &x.b.get(&[s[1], s[2]]).mul_rat(x.a.get(&[s[0], s[1]]))));
    let a_hat = nerve::solve_q_vec(nv, &rhs, n).map_err(|e| obstructed(e, "a_hat"))?;

    let lifted = x.tau.map(|_, t| t.constant.value().clone());
    let delta = coboundary(nv, &lifted);
    let eps_int = Cochain::from_fn(nv, 3, |s| {
        let (ijk, kl) = ([s[0], s[1], s[2]], [s[2], s[3]]);
        let b_kl = x.b.get(&kl);
        let a_kl = x.a.get(&kl);
        let m = x.m.get(&ijk).to_rat();
        let v = delta.get(s) + m_hat.get(&ijk).dot_rat(a_kl) - b_kl.full(&m, a_kl)
            + b_kl.low(x.a.get(&[s[0], s[1]]), x.a.get(&[s[1], s[2]]))
            + b_kl.low(x.a.get(&[s[0], s[2]]), &m);
        assert!(v.is_integer(), "a validated cocycle has integral defect");
        v.to_integer()
    });
    let omega = nerve::solve_q(nv, &delta.neg()).map_err(|e| obstructed(e, "omega"))?;
    let t = omega.map(|s, w| {
        let (ij, jk, ik) = ([s[0], s[1]], [s[1], s[2]], [s[0], s[2]]);
        Circle::new(-w + x.a.get(&ij).dot(a_hat.get(&jk)) + m_hat.get(s).dot_rat(x.a.get(&ik)))
    });
    let dual = CocycleTDhalf {
        n,
        nerve: nv.clone(),
        b: x.b.clone(),
        a: x.a.clone(),
        a_hat: a_hat.clone(),
        m: x.m.clone(),
        m_hat: m_hat.clone(),
        t: t.clone(),
    };
    dual.validate()?;

    // the left leg differs from x by a winding-free τ-coboundary
    let back = leftleg_tdhalf(&dual);
    let beta = x.tau.map(|s, tau| {
        let d = tau - back.tau.get(s);
        assert!(d.winding.is_zero());
        d.constant
    });
    let eps = nerve::solve_circle(nv, &beta).map_err(|e| obstructed(e, "epsilon"))?;
    let witness = GaugeTB1 { eps: eps.map(|_, c| AffChar::new(c.clone(), IntVec::zeros(n))), ..GaugeTB1::zero(nv, n) };
    verify_gauge_tb1(x, &back, &witness)?;

    Ok(Dualized {
        dual,
        trace: Trace { m_hat, a_hat, lifted, delta, omega, eps_int, t, beta, witness },
    })
}

/// Dualizes x and checks the witness gauge once more.
pub fn roundtrip_check(x: &CocycleTB1) -> Result<(), CocycleError> {
    let d = dualize(x)?;
    verify_gauge_tb1(x, &leftleg_tdhalf(&d.dual), &d.trace.witness)
}

/// Lifts a gauge g between the left legs of x and y to a TD½ gauge x → y.
pub fn lift_gauge(x: &CocycleTDhalf, y: &CocycleTDhalf, g: &GaugeTB1) -> Result<GaugeTDhalf, CocycleError> {
    let mut h = lift_gauge_closed_form(x, y, g)?;
    if verify_gauge_tdhalf(x, y, &h).is_err() {
        // the closed form missed; solve the t-gauge equation directly
        h.e = solve_e(x, y, &h)?;
    }
    verify_gauge_tdhalf(x, y, &h)?;
    Ok(h)
}

/// The lift with e from the closed formula, unverified.
pub fn lift_gauge_closed_form(x: &CocycleTDhalf, y: &CocycleTDhalf, g: &GaugeTB1) -> Result<GaugeTDhalf, CocycleError> {
    x.validate()?;
    y.validate()?;
    let (lx, ly) = (leftleg_tdhalf(x), leftleg_tdhalf(y));
    verify_gauge_tb1(&lx, &ly, g)
        .map_err(|e| CocycleError::Precondition(format!("gauge does not relate the left legs: {}", e)))?;
    let (nv, n) = (&x.nerve, x.n);
    let z_hat = g.eps.map(|_, e| e.winding.clone());

    // p̂_i − p̂_j = ẑ + C_j a + â − â′ − B′ p_i
    let rhs = Cochain::from_fn(nv, 1, |s| {
        let (i, j) = (s[0], s[1]);
        let beta = &(&(&z_hat.get(s).to_rat() + &g.c.get(&[j]).mul_rat(x.a.get(s))) + x.a_hat.get(s))
            - &(y.a_hat.get(s) + &y.b.get(s).mul_rat(g.p.get(&[i])));
        -beta
    });
    let p_hat = nerve::solve_q_vec(nv, &rhs, n).map_err(|e| obstructed(e, "p_hat"))?;

    // e′ with e′_ik − e′_ij − e′_jk = ρ − η
    let consts = g.eps.map(|_, e| e.constant.value().clone());
    let rho_minus_eta = Cochain::from_fn(nv, 2, |s| {
        let (i, j, k) = (s[0], s[1], s[2]);
        let rho = consts.get(&[i, k]) - consts.get(&[i, j]) - consts.get(&[j, k]);
        let eta = (g.p.get(&[i]) - g.p.get(&[j])).dot(&(p_hat.get(&[k]) - p_hat.get(&[j])));
        Circle::new(rho - eta)
    });
    let e_prime = nerve::solve_circle(nv, &rho_minus_eta.neg()).map_err(|e| obstructed(e, "e_prime"))?;
    let e = e_prime.map(|s, ep| {
        let (i, j) = (s[0], s[1]);
        let p_i = g.p.get(&[i]);
        Circle::new(
            ep.value() + z_hat.get(s).dot_rat(y.a.get(s)) + x.a.get(s).dot(p_hat.get(&[j]))
                - x.a_hat.get(s).dot(p_i)
                - g.c.get(&[j]).full(p_i, x.a.get(s)),
        )
    });
    Ok(GaugeTDhalf { c: g.c.clone(), z: g.z.clone(), z_hat, p: g.p.clone(), p_hat, e })
}

/// Lifts a gauge and returns the gauged cocycle as a cross-check.
pub fn lift_and_apply(x: &CocycleTDhalf, y: &CocycleTDhalf, g: &GaugeTB1) -> Result<CocycleTDhalf, CocycleError> {
    let h = lift_gauge(x, y, g)?;
    Ok(apply_gauge_tdhalf(x, &h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{leftleg_gauge, random_gauge_tdhalf, random_tb1, random_tdhalf};
    use crate::nerve::Nerve;
    use crate::sample::Sampler;

    #[test]
    fn zero_dualizes_to_zero() {
        let nv = Nerve::cone();
        let d = dualize(&CocycleTB1::zero(&nv, 2)).unwrap();
        assert_eq!(d.dual, CocycleTDhalf::zero(&nv, 2));
    }

    #[test]
    fn random_cocycles_dualize() {
        let mut s = Sampler::new(17);
        for nv in [Nerve::cone(), Nerve::full(5)] {
            for n in 1..=3 {
                let x = random_tb1(&nv, n, &mut s);
                let d = dualize(&x).unwrap();
                assert!(d.dual.validate().is_ok());
                assert!(roundtrip_check(&x).is_ok());
            }
        }
    }

    #[test]
    fn sphere_winding_class_is_obstructed() {
        let nv = Nerve::sphere();
        let mut x = CocycleTB1::zero(&nv, 1);
        let first = nv.simplices(2)[0].clone();
        x.tau.set(&first, AffChar::new(Circle::zero(), IntVec::from_i64(&[1])));
        assert!(x.validate().is_ok(), "{:?}", x.validate());
        match dualize(&x) {
            Err(CocycleError::Obstructed(o)) => assert_eq!(o.note, "a_hat"),
            other => panic!("expected obstruction, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn gauges_lift() {
        let mut s = Sampler::new(23);
        let nv = Nerve::full(5);
        for n in 1..=3 {
            let x = random_tdhalf(&nv, n, &mut s);
            let h = random_gauge_tdhalf(&nv, n, &mut s, true);
            let y = apply_gauge_tdhalf(&x, &h);
            let g = leftleg_gauge(&x, &h);
            let closed = lift_gauge_closed_form(&x, &y, &g).unwrap();
            assert!(verify_gauge_tdhalf(&x, &y, &closed).is_ok());
            let lifted = lift_gauge(&x, &y, &g).unwrap();
            assert!(verify_gauge_tdhalf(&x, &y, &lifted).is_ok());
        }
    }
}

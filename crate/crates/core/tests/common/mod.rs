//! Shared test oracles.
#![allow(dead_code)]

use serre_trace::localfield::LocalField;
use serre_trace::tate::KodairaType;
use serre_trace::weierstrass::WeierstrassModel;

pub const CHAR0_CORPUS: &str = include_str!("../../../../corpus/char0.txt");
pub const REGRESSION_CORPUS: &str = include_str!("../../../../corpus/regression.txt");

/// Classification from valuations of `c4`, `c6`, `Δ` alone, valid when the
/// residue characteristic is 0 or at least 5. Shares no code with Tate's
/// algorithm beyond the invariant formulas.
pub fn valuation_table_type<F: LocalField>(w: &WeierstrassModel<F>) -> (KodairaType, i64) {
    let f = w.field();
    assert!(f.residue_characteristic() == 0 || f.residue_characteristic() >= 5);
    let inv = w.invariants();
    let v = |x: &F::Elem| f.valuation(x).finite();
    let vd = v(&inv.discriminant).expect("nonsingular");
    let (v4, v6) = (v(&inv.c4), v(&inv.c6));
    let steps = [v4.map(|x| x / 4), v6.map(|x| x / 6), Some(vd / 12)].into_iter().flatten().min().unwrap();
    let vd = vd - 12 * steps;
    let v4 = v4.map(|x| x - 4 * steps);
    let vj = v4.map(|x| 3 * x - vd);
    let t = match (vd, v4) {
        (0, _) => KodairaType::I0,
        (n, Some(0)) => KodairaType::I(n as u32),
        (n, _) if vj.is_some_and(|j| j < 0) => KodairaType::IStar((n - 6) as u32),
        (2, _) => KodairaType::II,
        (3, _) => KodairaType::III,
        (4, _) => KodairaType::IV,
        (6, _) => KodairaType::I0Star,
        (8, _) => KodairaType::IVStar,
        (9, _) => KodairaType::IIIStar,
        (10, _) => KodairaType::IIStar,
        (n, _) => panic!("no Kodaira type with v(Δ_min) = {n}"),
    };
    (t, vd)
}

use rand::Rng;
use serre_trace::pipeline::AnyCurve;

/// Random element of R: an integer for `padic`, a polynomial of degree < 3 in `t` otherwise.
pub fn random_integral<F: LocalField, G: Rng>(f: &F, rng: &mut G) -> F::Elem {
    let mut x = f.zero();
    let mut power = f.one();
    let terms = if f.variable().is_some() { 3 } else { 1 };
    for _ in 0..terms {
        x = x + f.from_i64(rng.gen_range(-9..=9)) * power.clone();
        power = power * f.uniformizer();
    }
    x
}

/// Random unit of R, taken constant so that polynomial coefficients stay polynomial.
pub fn random_unit<F: LocalField, G: Rng>(f: &F, rng: &mut G) -> F::Elem {
    loop {
        let u = f.from_i64(rng.gen_range(-9..=9));
        if f.valuation(&u) == serre_trace::Valuation::Finite(0) {
            return u;
        }
    }
}

pub fn random_unimodular<F: LocalField, G: Rng>(w: &WeierstrassModel<F>, rng: &mut G) -> WeierstrassModel<F> {
    let f = w.field();
    let u = random_unit(f, rng);
    let (r, s, t) = (random_integral(f, rng), random_integral(f, rng), random_integral(f, rng));
    w.transform(&u, &r, &s, &t).expect("unimodular transforms keep models integral")
}

pub fn random_unimodular_any<G: Rng>(c: &AnyCurve, rng: &mut G) -> AnyCurve {
    match c {
        AnyCurve::Padic(w) => AnyCurve::Padic(random_unimodular(w, rng)),
        AnyCurve::LaurentQ(w) => AnyCurve::LaurentQ(random_unimodular(w, rng)),
        AnyCurve::LaurentFp(w) => AnyCurve::LaurentFp(random_unimodular(w, rng)),
    }
}

/// `v(Δ)` of the model as given.
pub fn input_discriminant_valuation(c: &AnyCurve) -> i64 {
    match c {
        AnyCurve::Padic(w) => w.discriminant_valuation(),
        AnyCurve::LaurentQ(w) => w.discriminant_valuation(),
        AnyCurve::LaurentFp(w) => w.discriminant_valuation(),
    }
}

/// Minimal model of an analyzed curve, as a curve again.
pub fn minimal_model(c: &AnyCurve) -> AnyCurve {
    use serre_trace::tate::tate_algorithm;
    match c {
        AnyCurve::Padic(w) => AnyCurve::Padic(tate_algorithm(w).unwrap().minimal_model),
        AnyCurve::LaurentQ(w) => AnyCurve::LaurentQ(tate_algorithm(w).unwrap().minimal_model),
        AnyCurve::LaurentFp(w) => AnyCurve::LaurentFp(tate_algorithm(w).unwrap().minimal_model),
    }
}

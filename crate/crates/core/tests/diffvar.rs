mod common;

use common::*;
use hamop::diffvar::*;
use hamop::monge::{operator_coeffs, MongeMetric};
use hamop::poly::{parse_poly, parse_ratfunc, Poly, RatFunc, Rational, VarTable};
use hamop::Error;
use proptest::prelude::*;
use rand::Rng;

fn g3() -> MongeMetric {
    metric([["u2^2 + 1", "-u1*u2", "0"], ["-u1*u2", "u1^2", "0"], ["0", "0", "1"]])
}

fn g5() -> MongeMetric {
    metric([["-2*u2", "u1", "1"], ["u1", "1", "0"], ["1", "0", "0"]])
}

fn flow_with(g: &MongeMetric, j: Option<OperatorExpr>, flux: &[&str], h: &str) -> FlowCheck {
    let sys = HydroSystem::parse(flux).unwrap();
    let mut ring = DiffRing::covering(sys.n(), &[g.vars(), sys.vars()]).unwrap();
    let j = j.unwrap_or_else(|| OperatorExpr::from_coeffs(&operator_coeffs(g).unwrap()));
    let h = HamiltonianFunctional::parse(&ring, h).unwrap();
    check_hamiltonian_flow(&mut ring, &sys, &j, &h).unwrap()
}

fn flow(g: &MongeMetric, flux: &[&str], h: &str) -> FlowCheck {
    flow_with(g, None, flux, h)
}

const EX1_FLUX: [&str; 3] = [
    "alpha*u2 + beta*u3",
    "((u2^2 - c)*(alpha*u2 + beta*u3) + gamma*(1 - c*u2^2) + delta*(u1 - c*u2*u3))/(u1*u2 - u3)",
    "(alpha*u3*(u2^2 - c) + beta*u3*(u2*u3 - c*u1) + gamma*(u1 - c*u2*u3) + delta*(u1^2 - c*u3^2))/(u1*u2 - u3)",
];

const EX1_H: &str = "1/2*alpha*(2*c*x*u1*w2 + u3*w2^2 + c*x^2*u3) + beta*u3*(1 - c^2)*w2*w3 \
    + delta*(x*u1*w1 + c*u3*w1*w2 + c*u1*w2*w3 + c*x*u3*w3) \
    + 1/2*gamma*(c*u1*w2^2 + x^2*u1 + 2*c*x*u3*w2)";

const EX2_FLUX: [&str; 3] = [
    "alpha*u2 + beta*u3",
    "((u2^2 - 1)*(alpha*u2 + beta*u3) - (gamma + delta*u1))/(u1*u2 - u3)",
    "((u2*u3 - u1)*(alpha*u2 + beta*u3) - u1*(gamma + delta*u1))/(u1*u2 - u3)",
];

const EX2_H: &str = "1/2*alpha*u3*w2^2 + beta*u3*w2*w3 - 1/2*gamma*x^2*u1 - delta*x*u1*w1";

const EX3_FLUX: [&str; 3] = ["u2 + u3", "(u2*(u2 + u3) - 1)/u1", "u1"];
const EX4_FLUX: [&str; 3] = ["u2", "(u2^2 + u3)/u1", "u1"];
const EX5_FLUX: [&str; 3] = ["u2", "u3", "u2^2 - u1*u3"];

#[test]
fn ex1_flow_with_symbolic_parameters() {
    let r = flow(&g1(), &EX1_FLUX, EX1_H);
    assert!(r.holds, "{:?}", r.residual);
}

#[test]
fn ex2_flow_with_symbolic_parameters() {
    let r = flow(&g2(), &EX2_FLUX, EX2_H);
    assert!(r.holds, "{:?}", r.residual);
}

#[test]
fn examples_3_to_5_flows() {
    let r = flow(&g3(), &EX3_FLUX, "-w1*w3 + x*u1*w2");
    assert!(r.holds, "{:?}", r.residual);
    let r = flow(&g4(), &EX4_FLUX, "u2*w1*w2 - w1*w3");
    assert!(r.holds, "{:?}", r.residual);
    let r = flow(&g5(), &EX5_FLUX, "-1/2*u1*w2^2 - w2*w3");
    assert!(r.holds, "{:?}", r.residual);
}

#[test]
fn perturbed_flux_fails() {
    let r = flow(&g5(), &["u2", "u3", "u2^2 - u1*u3 + u1"], "-1/2*u1*w2^2 - w2*w3");
    assert!(!r.holds);
    assert_eq!(r.residual.len(), 1);
    assert_eq!(r.residual[0].0, 3);
}

fn u(ring: &DiffRing, text: &str) -> RatFunc {
    parse_ratfunc(text, ring.base()).unwrap()
}

fn chain(f: &[Factor]) -> Chain {
    f.to_vec()
}

/// The operator of the n-component family, written out.
fn family_operator(ring: &DiffRing) -> OperatorExpr {
    let n = ring.n();
    let mut e: Vec<Vec<Vec<Chain>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        e[i][n - 1 - i].push(chain(&[Factor::D]));
    }
    let u1 = u(ring, "u1");
    let u2 = u(ring, "u2");
    let neg_u1 = -&u1;
    e[n - 2][n - 1].push(chain(&[Factor::D, Factor::Mul(neg_u1.clone())]));
    e[n - 1][n - 2].push(chain(&[Factor::Mul(neg_u1), Factor::D]));
    e[n - 1][n - 1].push(chain(&[Factor::D, Factor::Mul(u2.clone())]));
    e[n - 1][n - 1].push(chain(&[Factor::Mul(u2), Factor::D]));
    OperatorExpr::new(n, e).unwrap()
}

fn family_flux(n: usize) -> Vec<String> {
    let mut f: Vec<String> = (2..=n).map(|i| format!("u{i}")).collect();
    f.push("u2^2 - u1*u3".into());
    f
}

/// `Σ` taken from `m = 2` to `n`.
fn family_density(n: usize) -> String {
    let mut s = "-1/2*u1*w2^2".to_string();
    for m in 2..=n {
        s.push_str(&format!(" - 1/2*w{m}*w{}", n + 2 - m));
    }
    s
}

#[test]
fn n_component_family_flows() {
    for n in [4, 5, 6] {
        let flux = family_flux(n);
        let sys = HydroSystem::parse(&flux).unwrap();
        let mut ring = DiffRing::new(n, &[] as &[&str], 6).unwrap();
        let j = family_operator(&ring);
        let h = HamiltonianFunctional::parse(&ring, &family_density(n)).unwrap();
        let r = check_hamiltonian_flow(&mut ring, &sys, &j, &h).unwrap();
        assert!(r.holds, "n = {n}: {:?}", r.residual);
    }
}

#[test]
fn family_gradient_first_component() {
    let mut ring = DiffRing::new(4, &[] as &[&str], 6).unwrap();
    let h = ring.parse(&family_density(4)).unwrap();
    assert_eq!(h, ring.parse("-1/2*u1*w2^2 - w2*w4 - 1/2*w3^2").unwrap());
    assert_eq!(ring.variational_derivative(&h, 0).unwrap(), ring.parse("-1/2*w2^2").unwrap());
}

#[test]
fn family_operator_is_generated_by_a_metric() {
    for n in [4, 5, 6] {
        let ring = DiffRing::new(n, &[] as &[&str], 6).unwrap();
        let g = family_operator(&ring).generating_metric(&ring).unwrap();
        // g^{-1}: antidiagonal ones, −u¹ beside the corner, 2u² in the corner.
        let ginv = g.inverse().unwrap();
        for i in 0..n {
            for k in 0..n {
                let expect = match (i, k) {
                    (i, k) if i + k == n - 1 => u(&ring, "1"),
                    (i, k) if i == n - 1 && k == n - 1 => u(&ring, "2*u2"),
                    (i, k) if i + k == 2 * n - 3 => u(&ring, "-u1"),
                    _ => RatFunc::zero(ring.base()),
                };
                assert_eq!(ginv.get(i, k), &expect, "n = {n}, ({i},{k})");
            }
        }
        let metric = MongeMetric::new(g.map(|f| f.to_poly().unwrap())).unwrap();
        let back = OperatorExpr::from_coeffs(&operator_coeffs(&metric).unwrap());
        let sys = HydroSystem::parse(&family_flux(n)).unwrap();
        let mut ring = DiffRing::new(n, &[] as &[&str], 6).unwrap();
        let h = HamiltonianFunctional::parse(&ring, &family_density(n)).unwrap();
        assert!(check_hamiltonian_flow(&mut ring, &sys, &back, &h).unwrap().holds, "n = {n}");
    }
}

/// Operators for ex3, ex4 and ex5, written out in full.
fn displayed_operator(ring: &DiffRing, which: usize) -> OperatorExpr {
    let m = |s: &str| Factor::Mul(u(ring, s));
    let d = Factor::D;
    let mut e: Vec<Vec<Vec<Chain>>> = vec![vec![Vec::new(); 3]; 3];
    match which {
        3 => {
            e[0][0].push(vec![d.clone()]);
            e[0][1].push(vec![d.clone(), m("u2/u1")]);
            e[1][0].push(vec![m("u2/u1"), d.clone()]);
            e[1][1].push(vec![m("(u2^2 + 1)/(2*u1^2)"), d.clone()]);
            e[1][1].push(vec![d.clone(), m("(u2^2 + 1)/(2*u1^2)")]);
            e[2][2].push(vec![d]);
        }
        4 => {
            e[0][1].push(vec![d.clone(), m("1/u1")]);
            e[1][0].push(vec![m("1/u1"), d.clone()]);
            e[1][1].push(vec![m("u2/u1^2"), d.clone()]);
            e[1][1].push(vec![d.clone(), m("u2/u1^2")]);
            e[2][2].push(vec![d]);
        }
        _ => {
            e[0][2].push(vec![d.clone()]);
            e[1][1].push(vec![d.clone()]);
            e[1][2].push(vec![d.clone(), m("-u1")]);
            e[2][0].push(vec![d.clone()]);
            e[2][1].push(vec![m("-u1"), d.clone()]);
            e[2][2].push(vec![d.clone(), m("u2")]);
            e[2][2].push(vec![m("u2"), d.clone()]);
            e[2][2].push(vec![m("u1"), d.clone(), m("u1")]);
        }
    }
    OperatorExpr::new(3, e).unwrap()
}

#[test]
fn explicit_operators_are_generated_by_catalogued_metrics() {
    for (which, g) in [(3, g3()), (4, g4()), (5, g5())] {
        let ring = DiffRing::covering(3, &[g.vars()]).unwrap();
        let j = displayed_operator(&ring, which);
        let expect = g.matrix().to_ratfunc();
        assert_eq!(j.generating_metric(&ring).unwrap(), expect, "example {which}");
    }
}

#[test]
fn explicit_operators_agree_with_assembled_ones() {
    let mut r = rng(31);
    for (which, g) in [(3, g3()), (4, g4()), (5, g5())] {
        let ring = DiffRing::covering(3, &[g.vars()]).unwrap();
        let shown = displayed_operator(&ring, which);
        let built = OperatorExpr::from_coeffs(&operator_coeffs(&g).unwrap());
        for _ in 0..3 {
            let xi: Vec<RatFunc> = (0..3).map(|_| random_local(&mut r, &ring)).collect();
            assert_eq!(shown.apply(&ring, &xi).unwrap(), built.apply(&ring, &xi).unwrap(), "example {which}");
        }
    }
}

#[test]
fn explicit_operators_give_the_flows() {
    let cases: [(usize, MongeMetric, [&str; 3], &str); 3] = [
        (3, g3(), EX3_FLUX, "-w1*w3 + x*u1*w2"),
        (4, g4(), EX4_FLUX, "u2*w1*w2 - w1*w3"),
        (5, g5(), EX5_FLUX, "-1/2*u1*w2^2 - w2*w3"),
    ];
    for (which, g, flux, h) in cases {
        let ring = DiffRing::covering(3, &[g.vars()]).unwrap();
        let j = displayed_operator(&ring, which);
        assert!(flow_with(&g, Some(j), &flux, h).holds, "example {which}");
    }
}

#[test]
fn ex3_gradient() {
    let mut ring = DiffRing::new(3, &[] as &[&str], 6).unwrap();
    let h = ring.parse("-w1*w3 + x*u1*w2").unwrap();
    let d3 = ring.variational_derivative(&h, 2).unwrap();
    // δ/δu³ = D⁻¹w¹: a fresh symbol whose derivative is w¹.
    assert!(!ring.is_local(&d3));
    assert_eq!(ring.total_derivative(&d3).unwrap(), ring.w(0));
}

#[test]
fn nonlocal_residue_is_reported() {
    let ring = DiffRing::new(3, &[] as &[&str], 6).unwrap();
    let j = displayed_operator(&ring, 5);
    let xi = vec![ring.parse("w1*w2").unwrap(), ring.parse("0").unwrap(), ring.parse("0").unwrap()];
    assert!(matches!(j.apply(&ring, &xi), Err(Error::NonlocalResidue(_))));
}

#[test]
fn ex2_diagonalisability_conditions() {
    let sys = HydroSystem::parse(&EX2_FLUX).unwrap();
    let d = is_diagonalisable(&sys).unwrap();
    assert!(!d.haantjes_vanishes);
    assert!(haantjes_radical_is_det(&d.condition_polys, sys.vars()));
    let vars = sys.vars();
    assert!(
        is_diagonalisable(
            &sys.specialize(&param_values(vars, &[("alpha", 2), ("beta", 3), ("gamma", 4), ("delta", 6)])).unwrap()
        )
        .unwrap()
        .haantjes_vanishes
    );
}

#[test]
fn ex1_diagonalisability_conditions() {
    let sys = HydroSystem::parse(&EX1_FLUX).unwrap();
    let d = is_diagonalisable(&sys).unwrap();
    assert!(!d.haantjes_vanishes);
    assert!(haantjes_radical_is_det(&d.condition_polys, sys.vars()));
}

#[test]
fn ex1_is_diagonalisable_only_when_alpha_delta_equals_beta_gamma() {
    let sys = HydroSystem::parse(&EX1_FLUX).unwrap();
    let vars = sys.vars().clone();
    for c in [0, 2] {
        let generic = sys
            .specialize(&param_values(&vars, &[("c", c), ("alpha", 1), ("beta", 2), ("gamma", 3), ("delta", 5)]))
            .unwrap();
        assert!(!is_diagonalisable(&generic).unwrap().haantjes_vanishes, "c = {c}");
        let special = sys
            .specialize(&param_values(&vars, &[("c", c), ("alpha", 1), ("beta", 2), ("gamma", 3), ("delta", 6)]))
            .unwrap();
        assert!(is_diagonalisable(&special).unwrap().haantjes_vanishes, "c = {c}");
    }
}

fn param_values(vars: &VarTable, pairs: &[(&str, i64)]) -> Vec<(usize, Rational)> {
    pairs.iter().map(|(n, v)| (vars.index(n).unwrap(), Rational::from_int(*v))).collect()
}

#[test]
fn ex5_is_not_diagonalisable() {
    assert!(!is_diagonalisable(&HydroSystem::parse(&EX5_FLUX).unwrap()).unwrap().haantjes_vanishes);
}

#[test]
fn examples_are_linearly_degenerate() {
    let family = family_flux(5);
    let systems: Vec<Vec<&str>> = vec![
        EX1_FLUX.to_vec(),
        EX2_FLUX.to_vec(),
        EX3_FLUX.to_vec(),
        EX4_FLUX.to_vec(),
        EX5_FLUX.to_vec(),
        family.iter().map(|s| s.as_str()).collect(),
    ];
    for (i, flux) in systems.iter().enumerate() {
        let r = is_linearly_degenerate(&HydroSystem::parse(flux).unwrap()).unwrap();
        assert!(r.holds, "system {}: {:?}", i + 1, r.field);
    }
}

fn random_local(rng: &mut impl Rng, ring: &DiffRing) -> RatFunc {
    let atoms = ["u1", "u2", "u3", "u1x", "u2x", "u3xx", "x"];
    let mut f = Poly::zero(ring.vars());
    for _ in 0..3 {
        let mut m = Poly::from_int(ring.vars(), rng.gen_range(-3..=3));
        for _ in 0..rng.gen_range(0..=2) {
            m = &m * &parse_poly(atoms[rng.gen_range(0..atoms.len())], ring.vars()).unwrap();
        }
        f = &f + &m;
    }
    RatFunc::from_poly(f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn euler_operator_kills_total_derivatives(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let mut ring = DiffRing::new(3, &[] as &[&str], 6).unwrap();
        let f = random_local(&mut r, &ring);
        let df = ring.total_derivative(&f).unwrap();
        for k in 0..3 {
            prop_assert!(ring.variational_derivative(&df, k).unwrap().is_zero());
        }
    }

    #[test]
    fn flow_ignores_total_derivatives_in_the_density(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let ring = DiffRing::new(3, &[] as &[&str], 6).unwrap();
        let f = random_local(&mut r, &ring);
        let extra = ring.total_derivative(&f).unwrap();
        let h = format!("-1/2*u1*w2^2 - w2*w3 + {}", extra);
        prop_assert!(flow(&g5(), &EX5_FLUX, &h).holds);
    }
}

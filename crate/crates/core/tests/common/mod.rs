#![allow(dead_code)]

use hamop::exterior::{solve_phi, Bivector, ComplexForm, PhiForm, SubspaceA};
use hamop::linalg::{rank_of, Matrix};
use hamop::monge::{metric_from_subspace, MongeMetric};
use hamop::poly::{Poly, Rational, VarTable};
use hamop::verify::ProjectiveMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn metric(rows: [[&str; 3]; 3]) -> MongeMetric {
    MongeMetric::parse(&rows, &[]).unwrap()
}

pub fn g1() -> MongeMetric {
    metric([
        ["u2^2 + c", "-u1*u2 - u3", "2*u2"],
        ["-u1*u2 - u3", "u1^2 + c*u3^2", "-c*u2*u3 - u1"],
        ["2*u2", "-c*u2*u3 - u1", "c*u2^2 + 1"],
    ])
}

pub fn g2() -> MongeMetric {
    metric([["u2^2 + 1", "-u1*u2 - u3", "2*u2"], ["-u1*u2 - u3", "u1^2", "-u1"], ["2*u2", "-u1", "1"]])
}

pub fn g4() -> MongeMetric {
    metric([["-2*u2", "u1", "0"], ["u1", "0", "0"], ["0", "0", "1"]])
}

fn consts() -> std::sync::Arc<VarTable> {
    VarTable::params_only::<&str>(&[])
}

pub fn random_projective(rng: &mut ChaCha8Rng, n: usize) -> ProjectiveMap {
    loop {
        let l = Matrix::from_fn(n + 1, n + 1, |_, _| Rational::from_int(rng.gen_range(-2..=2)));
        if let Ok(t) = ProjectiveMap::new(l) {
            return t;
        }
    }
}

/// `l ≡ 1`: an affine change of coordinates.
pub fn random_affine(rng: &mut ChaCha8Rng, n: usize) -> ProjectiveMap {
    loop {
        let l = Matrix::from_fn(n + 1, n + 1, |i, j| match (i == n, j == n) {
            (true, true) => Rational::one(),
            (true, false) => Rational::zero(),
            _ => Rational::from_int(rng.gen_range(-2..=2)),
        });
        if let Ok(t) = ProjectiveMap::new(l) {
            return t;
        }
    }
}

fn random_bivector(rng: &mut ChaCha8Rng, dim: usize, range: i64) -> Bivector {
    let v = consts();
    let len = dim * (dim - 1) / 2;
    Bivector::from_coeffs(dim, (0..len).map(|_| Poly::from_int(&v, rng.gen_range(-range..=range))).collect()).unwrap()
}

pub fn random_subspace(rng: &mut ChaCha8Rng, n: usize) -> SubspaceA {
    loop {
        let basis = (0..n).map(|_| random_bivector(rng, n + 1, 2)).collect();
        if let Ok(a) = SubspaceA::new(basis) {
            return a;
        }
    }
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Matrix<Poly> {
    let v = consts();
    let mut m = Matrix::zeros(n, n, &Poly::zero(&v));
    for i in 0..n {
        for j in i..n {
            let c = Poly::from_int(&v, rng.gen_range(-range..=range));
            m.set(i, j, c.clone());
            m.set(j, i, c);
        }
    }
    m
}

/// A random non-degenerate φ from the King kernel of `a`.
pub fn random_admissible_phi(rng: &mut ChaCha8Rng, a: &SubspaceA) -> Option<PhiForm> {
    let space = solve_phi(a).unwrap();
    if space.basis.is_empty() {
        return None;
    }
    let v = consts();
    for _ in 0..20 {
        let mut m = Matrix::zeros(a.n(), a.n(), &Poly::zero(&v));
        for b in &space.basis {
            let r = Rational::from_int(rng.gen_range(-3..=3));
            m = m.add(&b.matrix().scale(&r)).unwrap();
        }
        let phi = PhiForm::new(m).unwrap();
        if phi.is_nondegenerate() {
            return Some(phi);
        }
    }
    None
}

/// A Hamiltonian three-component metric from a random subspace and admissible φ.
pub fn random_hamiltonian_n3(rng: &mut ChaCha8Rng) -> MongeMetric {
    loop {
        let a = random_subspace(rng, 3);
        if let Some(phi) = random_admissible_phi(rng, &a) {
            let g = metric_from_subspace(&a, &phi, 4).unwrap();
            if !g.det().is_zero() {
                return g;
            }
        }
    }
}

/// A Monge metric from a random subspace and a random, generally inadmissible, φ.
pub fn random_monge_n3(rng: &mut ChaCha8Rng) -> MongeMetric {
    loop {
        let a = random_subspace(rng, 3);
        let phi = PhiForm::new(random_symmetric(rng, 3, 3)).unwrap();
        if !phi.is_nondegenerate() {
            continue;
        }
        let g = metric_from_subspace(&a, &phi, 4).unwrap();
        if !g.det().is_zero() {
            return g;
        }
    }
}

/// A symmetric matrix of random polynomials of degree ≤ 2.
pub fn random_quadratic_n3(rng: &mut ChaCha8Rng) -> MongeMetric {
    let monos = ["1", "u1", "u2", "u3", "u1^2", "u1*u2", "u2*u3", "u3^2"];
    loop {
        let mut rows = vec![vec![String::new(); 3]; 3];
        for i in 0..3 {
            for j in i..3 {
                let terms: Vec<String> = monos.iter().map(|m| format!("{}*{m}", rng.gen_range(-2..=2))).collect();
                rows[i][j] = terms.join(" + ");
                rows[j][i] = rows[i][j].clone();
            }
        }
        let g = MongeMetric::parse(&rows, &[]).unwrap();
        if !g.det().is_zero() {
            return g;
        }
    }
}

/// `φ` over `⟨A¹, A²⟩ ⊂ Λ²(V³)`, with every `φ` admissible for two components.
pub fn random_two_component(rng: &mut ChaCha8Rng) -> (SubspaceA, PhiForm) {
    let a = random_subspace(rng, 2);
    loop {
        let phi = PhiForm::new(random_symmetric(rng, 2, 3)).unwrap();
        if phi.is_nondegenerate() {
            return (a, phi);
        }
    }
}

/// A random symmetric complex with small integer entries.
pub fn random_complex(rng: &mut ChaCha8Rng, n: usize) -> ComplexForm {
    let size = (n + 1) * n / 2;
    ComplexForm::new(n, random_symmetric(rng, size, 3)).unwrap()
}

/// The rational vector `k` with `A x = k × x` for a skew 3×3 `A`.
pub fn axial(b: &Bivector) -> [Rational; 3] {
    let c = |i, j| b.at(i, j).constant_value().unwrap();
    [-&c(1, 2), c(0, 2), -&c(0, 1)]
}

/// Columns `k¹, k², e_j`: sends `⟨A¹, A²⟩` into `⟨e¹∧e³, e²∧e³⟩`.
pub fn straightening_map(a: &SubspaceA) -> ProjectiveMap {
    let k1 = axial(&a.basis()[0]);
    let k2 = axial(&a.basis()[1]);
    for j in 0..3 {
        let l = Matrix::from_fn(3, 3, |r, col| match col {
            0 => k1[r].clone(),
            1 => k2[r].clone(),
            _ => Rational::from_int((r == j) as i64),
        });
        if let Ok(t) = ProjectiveMap::new(l) {
            return t;
        }
    }
    unreachable!("independent bivectors have independent axial vectors")
}

/// True when `target` is a Q-linear combination of `gens`.
pub fn in_rational_span(target: &Poly, gens: &[Poly]) -> bool {
    let mut index = std::collections::BTreeMap::new();
    for p in gens.iter().chain(std::iter::once(target)) {
        for (m, _) in p.terms() {
            let k = index.len();
            index.entry(m.clone()).or_insert(k);
        }
    }
    let row = |p: &Poly| {
        let mut r = vec![Rational::zero(); index.len()];
        for (m, c) in p.terms() {
            r[index[m]] = c.clone();
        }
        r
    };
    let mut rows: Vec<Vec<Rational>> = gens.iter().map(row).collect();
    let before = if rows.is_empty() { 0 } else { rank_of(&Matrix::from_rows(rows.clone()).unwrap()) };
    rows.push(row(target));
    rank_of(&Matrix::from_rows(rows).unwrap()) == before
}

/// Haantjes conditions of a system whose zero set should be `αδ = βγ`: every condition is a
/// multiple of αδ − βγ, and p² lies in the ideal of the cofactors for p = α, β, γ, δ
/// (certified inside the Q-span of the cofactors).
/// Then the cofactors vanish only where α = β = γ = δ = 0, so the radical of the condition
/// ideal is ⟨αδ − βγ⟩.
pub fn haantjes_radical_is_det(conditions: &[Poly], vars: &std::sync::Arc<VarTable>) -> bool {
    let det = hamop::poly::parse_poly("alpha*delta - beta*gamma", vars).unwrap();
    let Ok(cofactors) = conditions.iter().map(|c| c.exact_div(&det)).collect::<Result<Vec<_>, _>>() else {
        return false;
    };
    ["alpha", "beta", "gamma", "delta"].iter().all(|p| {
        let v = Poly::var(vars, vars.index(p).unwrap());
        in_rational_span(&(&v * &v), &cofactors)
    })
}

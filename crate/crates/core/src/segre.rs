//! Segre types of quadratic complexes and the six classes of three-component operators.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{normal_form_q, plucker_relations, ComplexForm, PluckerBasis};
use crate::linalg::{char_poly, rank_of, smith_normal_form, solve_linear, Matrix};
use crate::monge::{plucker_forms, MongeMetric};
use crate::poly::{rational_roots, Poly, RatFunc, Rational, UniPoly, VarTable};
use crate::verify::verify_metric;

/// Solves `g = p Q pᵗ` (chart `u^{n+1} = 1`) and returns the normal form of `Q`.
pub fn complex_from_metric(g: &MongeMetric) -> Result<ComplexForm> {
    let n = g.n();
    let vars = g.vars().clone();
    let params = vars.parameter_table();
    let forms = plucker_forms(n, n + 1, &vars)?;
    let size = forms.len();
    let unknowns: Vec<(usize, usize)> = (0..size).flat_map(|i| (i..size).map(move |j| (i, j))).collect();

    // Coefficient of each u-monomial in each g_ij, one column per unknown Q_IJ.
    let coords: Vec<usize> = vars.coordinates().collect();
    let mut rows: Vec<(usize, usize, Vec<u16>)> = Vec::new();
    let mut columns: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(unknowns.len());
    let key_index =
        |rows: &mut Vec<(usize, usize, Vec<u16>)>, k: (usize, usize, Vec<u16>)| match rows.iter().position(|r| *r == k)
        {
            Some(p) => p,
            None => {
                rows.push(k);
                rows.len() - 1
            }
        };
    for &(a, b) in &unknowns {
        let mut col = Vec::new();
        for i in 0..n {
            for j in i..n {
                let mut e = &(&forms[a][i] * &forms[b][j]) + &(&forms[a][j] * &forms[b][i]);
                if a == b {
                    e = e.scale(&Rational::new(1, 2));
                }
                for (mono, c) in e.coeffs_wrt_keyed(&coords) {
                    let c = c.constant_value().expect("forms are parameter free");
                    col.push((key_index(&mut rows, (i, j, mono)), c));
                }
            }
        }
        columns.push(col);
    }
    let mut rhs_entries = Vec::new();
    for i in 0..n {
        for j in i..n {
            for (mono, c) in g.get(i, j).coeffs_wrt_keyed(&coords) {
                rhs_entries.push((key_index(&mut rows, (i, j, mono)), c));
            }
        }
    }
    let zero = RatFunc::zero(&params);
    let mut system = Matrix::zeros(rows.len(), unknowns.len(), &zero);
    for (col, entries) in columns.iter().enumerate() {
        for (r, c) in entries {
            let v = system.get(*r, col) + &RatFunc::constant(&params, c.clone());
            system.set(*r, col, v);
        }
    }
    let mut rhs = vec![zero.clone(); rows.len()];
    for (r, c) in rhs_entries {
        rhs[r] = &rhs[r] + &RatFunc::from_poly(c.rebased(&params)?);
    }
    let (x, _) =
        solve_linear(&system, &rhs, &zero)?.ok_or_else(|| Error::Invalid("metric is not of Monge form".into()))?;
    let mut q = Matrix::zeros(size, size, &Poly::zero(&params));
    for (&(a, b), v) in unknowns.iter().zip(&x) {
        let v = v.to_poly().ok_or_else(|| Error::Invalid("non-polynomial complex entry".into()))?;
        q.set(a, b, v.clone());
        q.set(b, a, v);
    }
    normal_form_q(&ComplexForm::new(n, q)?)
}

/// Jordan blocks sharing one eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegreGroup {
    /// Block sizes, ascending.
    pub sizes: Vec<usize>,
    /// The eigenvalue when rational, otherwise the minimal polynomial of the root.
    pub eigenvalue: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegreSymbol {
    pub groups: Vec<SegreGroup>,
}

impl SegreSymbol {
    /// Multisets of block sizes per eigenvalue, sorted; the comparison key.
    pub fn shape(&self) -> Vec<Vec<usize>> {
        canonical(self.groups.iter().map(|g| g.sizes.clone()).collect())
    }

    /// Shape with every coincidence among nonzero eigenvalues forgotten.
    pub fn coarse_shape(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for g in &self.groups {
            if g.eigenvalue == "0" {
                out.push(g.sizes.clone());
            } else {
                out.extend(g.sizes.iter().map(|&s| vec![s]));
            }
        }
        canonical(out)
    }

    pub fn size(&self) -> usize {
        self.groups.iter().flat_map(|g| &g.sizes).sum()
    }

    /// Parses `[(111)12]`-style notation into a shape.
    pub fn parse_shape(text: &str) -> Result<Vec<Vec<usize>>> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse { pos: 0, msg: "expected [...]".into() })?;
        let mut out = Vec::new();
        let mut group: Option<Vec<usize>> = None;
        for (pos, ch) in inner.char_indices() {
            match ch {
                '(' if group.is_none() => group = Some(Vec::new()),
                ')' => {
                    let g = group.take().ok_or_else(|| Error::Parse { pos, msg: "unbalanced )".into() })?;
                    out.push(g);
                }
                d if d.is_ascii_digit() => {
                    let v = d.to_digit(10).unwrap() as usize;
                    match group.as_mut() {
                        Some(g) => g.push(v),
                        None => out.push(vec![v]),
                    }
                }
                _ => return Err(Error::Parse { pos, msg: format!("unexpected `{ch}`") }),
            }
        }
        if group.is_some() {
            return Err(Error::Parse { pos: inner.len(), msg: "unbalanced (".into() });
        }
        Ok(canonical(out))
    }
}

/// Groups by decreasing length, sizes ascending inside each group.
fn canonical(mut shape: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for g in &mut shape {
        g.sort();
    }
    shape.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    shape
}

impl fmt::Display for SegreSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for g in self.shape() {
            let digits: String = g.iter().map(|s| s.to_string()).collect();
            if g.len() > 1 {
                write!(f, "({digits})")?;
            } else {
                write!(f, "{digits}")?;
            }
        }
        write!(f, "]")
    }
}

/// Multiplicity of `f` in `d`.
fn valuation(d: &UniPoly, f: &UniPoly) -> usize {
    let mut d = d.clone();
    let mut e = 0;
    while let Ok((q, r)) = d.div_rem(f) {
        if !r.is_zero() {
            break;
        }
        d = q;
        e += 1;
    }
    e
}

fn is_unit(p: &UniPoly) -> bool {
    p.degree() == Some(0)
}

/// Splits `basis` until every element has the same multiplicity pattern over all its roots in each `d`.
fn refine(mut basis: Vec<UniPoly>, divisors: &[UniPoly]) -> Vec<UniPoly> {
    loop {
        let mut changed = false;
        let mut next = Vec::new();
        'outer: for f in &basis {
            for d in divisors {
                let e = valuation(d, f);
                let rest = d.exact_div(&f.pow(e as u32)).expect("valuation");
                let g = f.gcd(&rest);
                if !is_unit(&g) && g.degree() != f.degree() {
                    next.push(g.monic());
                    next.push(f.exact_div(&g).unwrap().monic());
                    changed = true;
                    continue 'outer;
                }
            }
            next.push(f.clone());
        }
        basis = next;
        if !changed {
            return basis;
        }
    }
}

/// Jordan structure of a rational square matrix.
pub fn jordan_symbol(c: &Matrix<Rational>) -> Result<SegreSymbol> {
    let smith = smith_normal_form(&c.char_matrix())?;
    let divisors: Vec<UniPoly> = smith.nontrivial().into_iter().cloned().collect();
    let Some(top) = divisors.last() else {
        return Ok(SegreSymbol { groups: Vec::new() });
    };
    let radical = top.exact_div(&top.gcd(&top.derivative()))?.monic();
    let mut basis = Vec::new();
    let mut rest = radical.clone();
    for r in rational_roots(&radical).unwrap_or_default() {
        let lin = UniPoly::linear(&r);
        basis.push(lin.clone());
        rest = rest.exact_div(&lin)?;
    }
    if !is_unit(&rest) {
        basis.push(rest.monic());
    }
    let basis = refine(basis, &divisors);
    let mut groups = Vec::new();
    for f in &basis {
        let mut sizes: Vec<usize> = divisors.iter().map(|d| valuation(d, f)).filter(|&e| e > 0).collect();
        sizes.sort();
        let deg = f.degree().unwrap_or(0);
        if deg == 1 {
            let root = -&f.coeff(0);
            groups.push(SegreGroup { sizes, eigenvalue: root.to_string() });
        } else {
            for k in 0..deg {
                groups.push(SegreGroup {
                    sizes: sizes.clone(),
                    eigenvalue: format!("root {} of {}", k + 1, f.display_in("x")),
                });
            }
        }
    }
    debug_assert_eq!(groups.iter().flat_map(|g| &g.sizes).sum::<usize>(), c.rows());
    Ok(SegreSymbol { groups })
}

/// Segre symbol of `C = Q Ω^{-1}`.
pub fn segre_symbol(q: &ComplexForm, omega: &Matrix<Rational>) -> Result<SegreSymbol> {
    let qr = q.matrix().to_rational()?;
    let c = qr.mul(&omega.inverse()?)?;
    jordan_symbol(&c)
}

/// The Plücker quadric for `n = 3` in the lexicographic basis.
pub fn omega_n3() -> Matrix<Rational> {
    plucker_relations(3).remove(0).omega
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassLabel {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    Degenerate,
    NotHamiltonian,
}

impl ClassLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClassLabel::G1 => "g1",
            ClassLabel::G2 => "g2",
            ClassLabel::G3 => "g3",
            ClassLabel::G4 => "g4",
            ClassLabel::G5 => "g5",
            ClassLabel::G6 => "g6",
            ClassLabel::Degenerate => "degenerate",
            ClassLabel::NotHamiltonian => "not-hamiltonian",
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The six admissible Segre types and their classes.
pub const SEGRE_TABLE: [(&str, ClassLabel); 6] = [
    ("[(111)111]", ClassLabel::G1),
    ("[(111)12]", ClassLabel::G2),
    ("[11(112)]", ClassLabel::G3),
    ("[(114)]", ClassLabel::G4),
    ("[(123)]", ClassLabel::G5),
    ("[(222)]", ClassLabel::G6),
];

/// Table entry matching the symbol, or failing that its coarsening.
pub fn class_for_symbol(sym: &SegreSymbol) -> Option<(&'static str, ClassLabel)> {
    let lookup = |shape: Vec<Vec<usize>>| {
        SEGRE_TABLE.iter().find(|(s, _)| SegreSymbol::parse_shape(s).is_ok_and(|t| t == shape)).copied()
    };
    lookup(sym.shape()).or_else(|| lookup(sym.coarse_shape()))
}

/// Invariants of `C = QΩ^{-1}`: characteristic polynomial `λ³(λ³ + pλ + q)` and the
/// rescaled pair with `27μ² + ν³ = 0` exactly when the cubic has a repeated root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discriminants {
    pub trace: String,
    pub rank: usize,
    pub p: String,
    pub q: String,
    pub mu: String,
    pub nu: String,
    pub repeated_root: bool,
}

/// `μ = −q/16`, `ν = p/4`. For the Case 4 family these are `det φ` and
/// `4αβ − ab − 3c²`.
pub fn discriminants(q: &ComplexForm) -> Result<Discriminants> {
    let omega_inv = omega_n3().inverse()?.to_poly(q.vars());
    let c = q.matrix().mul(&omega_inv)?;
    let coeffs = char_poly(&c)?;
    let (p, qq) = (coeffs[4].clone(), coeffs[3].clone());
    let trace = -&coeffs[5];
    let mu = qq.scale(&Rational::new(-1, 16));
    let nu = p.scale(&Rational::new(1, 4));
    let disc = &(&mu * &mu).scale(&Rational::from_int(27)) + &nu.pow(3);
    let rank = rank_of(&c);
    Ok(Discriminants {
        trace: trace.to_string(),
        rank,
        p: p.to_string(),
        q: qq.to_string(),
        mu: mu.to_string(),
        nu: nu.to_string(),
        repeated_root: disc.is_zero(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub label: Option<ClassLabel>,
    /// Refined symbol of `C`.
    pub segre_symbol: Option<String>,
    /// The matching entry of [`SEGRE_TABLE`].
    pub class_symbol: Option<String>,
    pub groups: Vec<SegreGroup>,
    pub discriminants: Option<Discriminants>,
}

/// Class of a three-component metric with rational coefficients.
pub fn classify_n3(g: &MongeMetric) -> Result<Classification> {
    if g.n() != 3 {
        return Err(Error::DimensionMismatch(format!("classification needs n = 3, got {}", g.n())));
    }
    if g.is_parametric() {
        return Err(Error::Parametric("specialize the parameters before classifying".into()));
    }
    let none = |label| Classification {
        label: Some(label),
        segre_symbol: None,
        class_symbol: None,
        groups: Vec::new(),
        discriminants: None,
    };
    if g.det().is_zero() {
        return Ok(none(ClassLabel::Degenerate));
    }
    if !verify_metric(g).hamiltonian {
        return Ok(none(ClassLabel::NotHamiltonian));
    }
    let q = complex_from_metric(g)?;
    if q.rank() != 3 {
        return Ok(none(ClassLabel::Degenerate));
    }
    let sym = segre_symbol(&q, &omega_n3())?;
    let class = class_for_symbol(&sym);
    Ok(Classification {
        label: class.map(|c| c.1),
        segre_symbol: Some(sym.to_string()),
        class_symbol: class.map(|c| c.0.to_string()),
        groups: sym.groups.clone(),
        discriminants: Some(discriminants(&q)?),
    })
}

/// Signed permutation taking lexicographic Plücker coordinates to
/// `(du¹, du², du³, u²du³−u³du², u³du¹−u¹du³, u¹du²−u²du¹)`.
pub fn third_proof_basis() -> Matrix<Rational> {
    let b = PluckerBasis::new(3);
    let order: [((usize, usize), i64); 6] =
        [((0, 3), -1), ((1, 3), -1), ((2, 3), -1), ((1, 2), 1), ((0, 2), -1), ((0, 1), 1)];
    let mut s = Matrix::zeros(6, 6, &Rational::zero());
    for (row, ((a, c), sign)) in order.iter().enumerate() {
        s.set(row, b.index(*a, *c).unwrap().0, Rational::from_int(*sign));
    }
    s
}

/// Result of the reductions `X₂ = K` (skew, to make `A` invertible) and `X₃ = skew(A⁻¹M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairNormalForm {
    pub a: Matrix<Rational>,
    pub b: Matrix<Rational>,
    /// `X` with `X Q_t Xᵗ = [[A, AB], [BA, BAB]]` where `Q_t` is `Q` in the third-proof basis.
    pub x: Matrix<Rational>,
    /// Characteristic polynomial of `AB`.
    pub char_poly: UniPoly,
    pub jordan: SegreSymbol,
}

fn blocks(
    x1: &Matrix<Rational>,
    x2: &Matrix<Rational>,
    x3: &Matrix<Rational>,
    x4: &Matrix<Rational>,
) -> Matrix<Rational> {
    Matrix::from_fn(6, 6, |i, j| match (i < 3, j < 3) {
        (true, true) => x1.get(i, j).clone(),
        (true, false) => x2.get(i, j - 3).clone(),
        (false, true) => x3.get(i - 3, j).clone(),
        (false, false) => x4.get(i - 3, j - 3).clone(),
    })
}

fn skew3(v: [i64; 3]) -> Matrix<Rational> {
    Matrix::from_ints(&[&[0, v[0], v[1]], &[-v[0], 0, v[2]], &[-v[1], -v[2], 0]])
}

pub fn pair_normal_form(q: &ComplexForm) -> Result<PairNormalForm> {
    if q.n() != 3 {
        return Err(Error::DimensionMismatch("pair normal form needs n = 3".into()));
    }
    let s = third_proof_basis();
    let qt = s.mul(&q.matrix().to_rational()?)?.mul(&s.transpose())?;
    if rank_of(&qt) != 3 {
        return Err(Error::NormalFormSingular(format!("rank {} complex", rank_of(&qt))));
    }
    let e = Matrix::identity(3, &Rational::one());
    let z = Matrix::zeros(3, 3, &Rational::zero());
    let top = |m: &Matrix<Rational>| m.submatrix(&[0, 1, 2], &[0, 1, 2]);

    let mut candidates = vec![[0, 0, 0]];
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                if [a, b, c] != [0, 0, 0] {
                    candidates.push([a, b, c]);
                }
            }
        }
    }
    let mut found = None;
    for k in candidates {
        let x = blocks(&e, &skew3(k), &z, &e);
        let moved = x.mul(&qt)?.mul(&x.transpose())?;
        if top(&moved).inverse().is_ok() {
            found = Some((x, moved));
            break;
        }
    }
    let (x2, moved) = found.ok_or_else(|| Error::NoInvertibleBlock("no skew translation makes A invertible".into()))?;
    let a = top(&moved);
    let m = moved.submatrix(&[0, 1, 2], &[3, 4, 5]);
    let ainv = a.inverse()?;
    let x3 = ainv.mul(&m)?.skew_part();
    let x = blocks(&e, &z, &x3, &e).mul(&x2)?;
    let reduced = x.mul(&qt)?.mul(&x.transpose())?;
    let b = ainv.mul(&reduced.submatrix(&[0, 1, 2], &[3, 4, 5]))?;
    debug_assert!(b.is_symmetric());
    let ab = a.mul(&b)?;
    Ok(PairNormalForm { char_poly: ab.char_poly_uni()?, jordan: jordan_symbol(&ab)?, a, b, x })
}

/// `[[A, AB], [BA, BAB]]`.
pub fn pair_matrix(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    let ab = a.mul(b)?;
    let ba = b.mul(a)?;
    let bab = ba.mul(b)?;
    Ok(blocks(a, &ab, &ba, &bab))
}

/// `Q` over an empty parameter table from a rational matrix.
pub fn complex_from_rational(n: usize, q: &Matrix<Rational>) -> Result<ComplexForm> {
    ComplexForm::new(n, q.to_poly(&VarTable::params_only::<&str>(&[])))
}

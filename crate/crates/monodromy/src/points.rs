use std::cmp::Ordering;
use std::sync::Arc;

use exactnum::{factor_over_q, int, BigRational, NFElement, NumberField, UniPoly};
use num_traits::{Signed, Zero};
use qde::DiffOperator;

use crate::error::MonodromyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PointKind {
    Origin,
    Finite,
    Infinity,
}

/// A singular point, or for finite points the class of Galois-conjugate roots of one
/// irreducible factor of p_N; `root` is the root the local data is computed at.
#[derive(Clone, Debug)]
pub struct SingularPoint {
    pub kind: PointKind,
    /// Primitive integer factor with positive leading coefficient (finite points only).
    pub factor: Option<UniPoly>,
    pub field: Arc<NumberField>,
    pub root: NFElement,
    pub multiplicity_in_leading: usize,
}

impl SingularPoint {
    fn rational(kind: PointKind) -> Self {
        let field = NumberField::rationals();
        SingularPoint { kind, factor: None, root: NFElement::zero(&field), field, multiplicity_in_leading: 0 }
    }

    pub fn origin() -> Self {
        Self::rational(PointKind::Origin)
    }

    pub fn infinity() -> Self {
        Self::rational(PointKind::Infinity)
    }

    /// One record per irreducible factor; the root is the generator of Q[x]/(factor).
    pub fn finite(factor: &UniPoly, multiplicity: usize) -> Result<Self, MonodromyError> {
        let field = NumberField::new(factor)?;
        let root = NFElement::generator(&field);
        Ok(SingularPoint {
            kind: PointKind::Finite,
            factor: Some(primitive(factor)),
            field,
            root,
            multiplicity_in_leading: multiplicity,
        })
    }

    /// The same point, computed at another root of its factor.
    pub fn at_root(&self, root: NFElement) -> Self {
        SingularPoint { root, ..self.clone() }
    }

    /// Number of Galois-conjugate points represented.
    pub fn conjugates(&self) -> usize {
        self.factor.as_ref().and_then(UniPoly::degree).unwrap_or(1)
    }

    pub fn label(&self) -> String {
        match self.kind {
            PointKind::Origin => "t=0".into(),
            PointKind::Infinity => "t=infinity".into(),
            PointKind::Finite => {
                let f = self.factor.as_ref().unwrap();
                if f.degree() == Some(1) {
                    let root = -f.coeff(0) / f.coeff(1);
                    format!("t={}", exactnum::format_rational(&root))
                } else {
                    format!("roots of {f}")
                }
            }
        }
    }
}

fn primitive(f: &UniPoly) -> UniPoly {
    let p = UniPoly::from_bigints(&f.to_primitive_integers());
    if p.lc().is_some_and(|c| c.is_negative()) {
        -&p
    } else {
        p
    }
}

/// Origin, one point per irreducible factor of p_N other than t, and infinity.
pub fn singular_points(op: &DiffOperator) -> Result<Vec<SingularPoint>, MonodromyError> {
    let mut pts = vec![SingularPoint::origin()];
    let lead = op.leading();
    if lead.degree().unwrap_or(0) > 0 {
        let mut finite = Vec::new();
        for (f, m) in factor_over_q(&lead)?.factors {
            if f == UniPoly::x() {
                continue;
            }
            finite.push(SingularPoint::finite(&f, m)?);
        }
        finite.sort_by(|a, b| cmp_factor(a, b));
        pts.extend(finite);
    }
    pts.push(SingularPoint::infinity());
    Ok(pts)
}

fn cmp_factor(a: &SingularPoint, b: &SingularPoint) -> Ordering {
    a.factor.as_ref().unwrap().canonical_cmp(b.factor.as_ref().unwrap())
}

/// L = Σ_i u^i f_i(θ) with θ = u d/du and f_0 ≠ 0; `terms[i]` holds f_i ascending in θ.
#[derive(Clone, Debug)]
pub struct ThetaForm {
    pub field: Arc<NumberField>,
    pub terms: Vec<Vec<NFElement>>,
}

impl ThetaForm {
    fn new(field: Arc<NumberField>, mut terms: Vec<Vec<NFElement>>) -> Self {
        let zero = NFElement::zero(&field);
        for f in terms.iter_mut() {
            while f.last().is_some_and(NFElement::is_zero) {
                f.pop();
            }
        }
        let first = terms.iter().position(|f| !f.is_empty()).unwrap_or(terms.len());
        terms.drain(..first);
        while terms.last().is_some_and(|f| f.is_empty()) {
            terms.pop();
        }
        if terms.is_empty() {
            terms.push(vec![zero]);
        }
        ThetaForm { field, terms }
    }

    pub fn indicial(&self) -> &[NFElement] {
        &self.terms[0]
    }

    /// θ-degree of f_0.
    pub fn indicial_degree(&self) -> usize {
        self.terms[0].len().saturating_sub(1)
    }

    pub fn term(&self, i: usize) -> &[NFElement] {
        self.terms.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn indicial_string(&self) -> String {
        let parts: Vec<String> = self.terms[0]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*λ^{k}"))
            .collect();
        parts.join(" + ")
    }
}

fn rational_terms(rows: Vec<Vec<BigRational>>) -> ThetaForm {
    let field = NumberField::rationals();
    let terms = rows
        .into_iter()
        .map(|f| f.into_iter().map(|q| NFElement::from_rational(&field, q)).collect())
        .collect();
    ThetaForm::new(field, terms)
}

/// S(k, j): θ^k = Σ_j S(k, j) t^j (d/dt)^j.
fn stirling2(n: usize) -> Vec<Vec<BigRational>> {
    let mut s = vec![vec![BigRational::zero(); n + 1]; n + 1];
    s[0][0] = int(1);
    for k in 1..=n {
        for j in 1..=k {
            s[k][j] = &s[k - 1][j - 1] + int(j as i64) * &s[k - 1][j];
        }
    }
    s
}

/// θ(θ-1)...(θ-j+1), ascending.
fn falling(j: usize) -> Vec<BigRational> {
    let mut p = vec![int(1)];
    for i in 0..j {
        let mut q = vec![BigRational::zero(); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            q[k + 1] += c;
            q[k] -= c * int(i as i64);
        }
        p = q;
    }
    p
}

/// The operator in the local coordinate u of `s`, as a θ_u-form.
pub fn localize(op: &DiffOperator, s: &SingularPoint) -> ThetaForm {
    let (n, r) = (op.order(), op.degree());
    match s.kind {
        PointKind::Origin => rational_terms((0..=r).map(|i| (0..=n).map(|k| op.coeff(k, i).clone()).collect()).collect()),
        PointKind::Infinity => rational_terms(
            (0..=r)
                .map(|i| {
                    (0..=n)
                        .map(|k| if k % 2 == 0 { op.coeff(k, r - i).clone() } else { -op.coeff(k, r - i) })
                        .collect()
                })
                .collect(),
        ),
        PointKind::Finite => {
            let field = &s.field;
            let zero = NFElement::zero(field);
            let st = stirling2(n);
            // u^N L = Σ_j u^{N-j} r_j(u + a) [θ]_j with r_j = t^j Σ_k S(k, j) p_k.
            let mut shifted: Vec<Vec<NFElement>> = Vec::with_capacity(n + 1);
            for j in 0..=n {
                let mut rj = vec![BigRational::zero(); r + j + 1];
                for k in j..=n {
                    if st[k][j].is_zero() {
                        continue;
                    }
                    for l in 0..=r {
                        rj[l + j] += &st[k][j] * op.coeff(k, l);
                    }
                }
                // Horner in (u + a).
                let mut acc: Vec<NFElement> = Vec::new();
                for c in rj.iter().rev() {
                    let mut next = vec![zero.clone(); acc.len() + 1];
                    for (i, x) in acc.iter().enumerate() {
                        next[i + 1] = next[i + 1].add(x);
                        next[i] = next[i].add(&x.mul(&s.root));
                    }
                    next[0] = next[0].add_rational(c);
                    acc = next;
                }
                shifted.push(acc);
            }
            let top = (0..=n).map(|j| n - j + shifted[j].len()).max().unwrap();
            let mut terms = vec![vec![zero.clone(); n + 1]; top];
            for (j, poly) in shifted.iter().enumerate() {
                let fj = falling(j);
                for (e, c) in poly.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let i = e + n - j;
                    for (k, fk) in fj.iter().enumerate() {
                        if !fk.is_zero() {
                            terms[i][k] = terms[i][k].add(&c.scale(fk));
                        }
                    }
                }
            }
            ThetaForm::new(field.clone(), terms)
        }
    }
}

#[derive(Clone, Debug)]
pub struct FuchsianReport {
    pub points: Vec<(SingularPoint, bool)>,
}

impl FuchsianReport {
    pub fn is_fuchsian(&self) -> bool {
        self.points.iter().all(|(_, ok)| *ok)
    }

    pub fn first_irregular(&self) -> Option<&SingularPoint> {
        self.points.iter().find(|(_, ok)| !ok).map(|(p, _)| p)
    }
}

/// Regular singularity at every point: the θ-form's f_0 has degree exactly N.
pub fn is_fuchsian(op: &DiffOperator) -> Result<FuchsianReport, MonodromyError> {
    let points = singular_points(op)?
        .into_iter()
        .map(|s| {
            let ok = localize(op, &s).indicial_degree() == op.order();
            (s, ok)
        })
        .collect();
    Ok(FuchsianReport { points })
}

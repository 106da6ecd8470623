use exactnum::{rational::frac, rational_roots_over_nf, BigRational, NFElement};
use num_traits::One;

use crate::error::MonodromyError;
use crate::linalg::rref;
use crate::points::{SingularPoint, ThetaForm};

/// y = u^exponent Σ_m Σ_j coeffs[m][j] u^m log^j u.
#[derive(Clone, Debug)]
pub struct FrobeniusSolution {
    pub exponent: BigRational,
    pub coeffs: Vec<Vec<NFElement>>,
}

impl FrobeniusSolution {
    /// Highest log power with a nonzero coefficient.
    pub fn log_degree(&self) -> usize {
        self.coeffs
            .iter()
            .flat_map(|c| c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, _)| j))
            .max()
            .unwrap_or(0)
    }
}

/// Solutions whose exponents share one residue mod 1.
#[derive(Clone, Debug)]
pub(crate) struct ExponentClass {
    pub base: BigRational,
    pub exponents: Vec<(BigRational, usize)>,
    /// Kernel vectors, flattened as levels 0..=m_max of width `width`.
    pub basis: Vec<Vec<NFElement>>,
    pub width: usize,
}

/// Rational exponents with multiplicities, checked to account for the full order.
pub(crate) fn exponents(form: &ThetaForm, point: &SingularPoint, order: usize) -> Result<Vec<(BigRational, usize)>, MonodromyError> {
    let roots = rational_roots_over_nf(form.indicial());
    if roots.iter().map(|(_, m)| m).sum::<usize>() != order {
        return Err(MonodromyError::IrrationalExponents { point: point.label(), indicial: form.indicial_string() });
    }
    Ok(roots)
}

/// g_s(x) = f^{(s)}(x)/s!.
fn taylor(f: &[NFElement], x: &BigRational, s: usize, zero: &NFElement) -> NFElement {
    let mut acc = zero.clone();
    let mut pw = BigRational::one();
    let mut binom = BigRational::one();
    for k in s..f.len() {
        if k > s {
            binom = binom * BigRational::from_integer((k as i64).into()) / BigRational::from_integer(((k - s) as i64).into());
            pw *= x;
        }
        if !f[k].is_zero() {
            acc = acc.add(&f[k].scale(&(&binom * &pw)));
        }
    }
    acc
}

/// Matrix of f(x + d/dlog) on log-polynomials of degree < width.
fn block(f: &[NFElement], x: &BigRational, width: usize, zero: &NFElement) -> Vec<Vec<NFElement>> {
    let mut b = vec![vec![zero.clone(); width]; width];
    for s in 0..width.min(f.len()) {
        let g = taylor(f, x, s, zero);
        if g.is_zero() {
            continue;
        }
        for j in 0..width - s {
            let fall: i64 = ((j + 1)..=(j + s)).map(|v| v as i64).product();
            b[j][j + s] = g.scale(&BigRational::from_integer(fall.into()));
        }
    }
    b
}

fn level_rhs(
    form: &ThetaForm,
    exponent_of: impl Fn(usize) -> BigRational,
    levels: &[Vec<NFElement>],
    m: usize,
    width: usize,
    zero: &NFElement,
) -> Vec<NFElement> {
    let mut rhs = vec![zero.clone(); width];
    for i in 1..=m {
        let f = form.term(i);
        if f.is_empty() {
            continue;
        }
        let b = block(f, &exponent_of(m - i), width, zero);
        let c = &levels[m - i];
        for (j, row) in b.iter().enumerate() {
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() && !c[k].is_zero() {
                    rhs[j] = rhs[j].add(&x.mul(&c[k]));
                }
            }
        }
    }
    rhs
}

/// Linear forms in the free parameters, indexed [level][log power][parameter].
type Levels = Vec<Vec<Vec<NFElement>>>;

/// Impose a = 0 on the parameters: eliminate one parameter from every form.
fn eliminate(a: &[NFElement], forms: &mut [&mut Vec<NFElement>]) {
    let Some(k) = a.iter().rposition(|x| !x.is_zero()) else { return };
    let inv = a[k].inv().expect("nonzero pivot");
    let a: Vec<NFElement> = a.iter().map(|x| x.mul(&inv)).collect();
    for v in forms.iter_mut() {
        if !v[k].is_zero() {
            let f = v[k].clone();
            for (vi, ai) in v.iter_mut().zip(&a) {
                if !ai.is_zero() {
                    *vi = vi.sub(&f.mul(ai));
                }
            }
        }
        v.remove(k);
    }
}

/// Solve the recursion level by level through m_max, opening a new parameter for every
/// free log coefficient at a resonance and eliminating one for every compatibility
/// condition; returns the parameter basis flattened over levels.
fn solve_class(form: &ThetaForm, base: &BigRational, width: usize, m_max: usize) -> Vec<Vec<NFElement>> {
    let zero = NFElement::zero(&form.field);
    let one = NFElement::one(&form.field);
    let at = |m: usize| base + BigRational::from_integer((m as i64).into());
    let mut params = 0usize;
    let mut levels: Levels = Vec::new();
    for m in 0..=m_max {
        let mut rhs = vec![vec![zero.clone(); params]; width];
        for i in 1..=m {
            let f = form.term(i);
            if f.is_empty() {
                continue;
            }
            let b = block(f, &at(m - i), width, &zero);
            let c = &levels[m - i];
            for (j, row) in b.iter().enumerate() {
                for (k, x) in row.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (r, ck) in rhs[j].iter_mut().zip(&c[k]) {
                        if !ck.is_zero() {
                            *r = r.add(&x.mul(ck));
                        }
                    }
                }
            }
        }
        let b = block(form.indicial(), &at(m), width, &zero);
        let mut aug: Vec<Vec<NFElement>> =
            b.into_iter().zip(rhs).map(|(mut row, r)| { row.extend(r.iter().map(NFElement::neg)); row }).collect();
        let pivots = rref(&mut aug, width);
        let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
        let old = params;
        params += free.len();
        for v in levels.iter_mut().flatten() {
            v.resize(params, zero.clone());
        }
        let mut level = vec![vec![zero.clone(); params]; width];
        for (t, &f) in free.iter().enumerate() {
            level[f][old + t] = one.clone();
        }
        for (i, &p) in pivots.iter().enumerate() {
            let v = &mut level[p];
            v[..old].clone_from_slice(&aug[i][width..]);
            for (t, &f) in free.iter().enumerate() {
                v[old + t] = aug[i][f].neg();
            }
        }
        levels.push(level);
        let mut conditions: Vec<Vec<NFElement>> = aug[pivots.len()..]
            .iter()
            .map(|row| {
                let mut v = row[width..].to_vec();
                v.resize(params, zero.clone());
                v
            })
            .collect();
        while let Some(a) = conditions.pop() {
            if a.iter().all(NFElement::is_zero) {
                continue;
            }
            let mut forms: Vec<&mut Vec<NFElement>> = levels.iter_mut().flatten().chain(conditions.iter_mut()).collect();
            eliminate(&a, &mut forms);
            params -= 1;
        }
    }
    (0..params)
        .map(|p| levels.iter().flat_map(|l| l.iter().map(|v| v[p].clone())).collect())
        .collect()
}

pub(crate) fn classes(form: &ThetaForm, point: &SingularPoint, order: usize) -> Result<Vec<ExponentClass>, MonodromyError> {
    let mut roots = exponents(form, point, order)?;
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let mut groups: Vec<Vec<(BigRational, usize)>> = Vec::new();
    for r in roots {
        match groups.iter_mut().find(|g| frac(&g[0].0) == frac(&r.0)) {
            Some(g) => g.push(r),
            None => groups.push(vec![r]),
        }
    }
    let mut out = Vec::new();
    for g in groups {
        let base = g[0].0.clone();
        let width: usize = g.iter().map(|(_, m)| m).sum();
        let m_max = (&g.last().unwrap().0 - &base).to_integer().try_into().map_err(|_| MonodromyError::Internal("exponent gap".into()))?;
        let basis = solve_class(form, &base, width, m_max);
        if basis.len() != width {
            return Err(MonodromyError::Internal(format!(
                "{}: {} solutions for exponent class of multiplicity {width}",
                point.label(),
                basis.len()
            )));
        }
        out.push(ExponentClass { base, exponents: g, basis, width });
    }
    Ok(out)
}

fn extend(form: &ThetaForm, class: &ExponentClass, v: &[NFElement], terms: usize) -> Result<FrobeniusSolution, MonodromyError> {
    let zero = NFElement::zero(&form.field);
    let width = class.width;
    let mut levels: Vec<Vec<NFElement>> = v.chunks(width).map(<[NFElement]>::to_vec).collect();
    let exp_of = |m: usize| &class.base + BigRational::from_integer((m as i64).into());
    while levels.len() < terms {
        let m = levels.len();
        let rhs = level_rhs(form, &exp_of, &levels, m, width, &zero);
        let b = block(form.indicial(), &exp_of(m), width, &zero);
        let diag = b[0][0].inv().map_err(|_| MonodromyError::Internal("resonance beyond class".into()))?;
        let mut c = vec![zero.clone(); width];
        for j in (0..width).rev() {
            let mut acc = rhs[j].neg();
            for k in j + 1..width {
                acc = acc.sub(&b[j][k].mul(&c[k]));
            }
            c[j] = acc.mul(&diag);
        }
        levels.push(c);
    }
    levels.truncate(terms.max(1));
    Ok(FrobeniusSolution { exponent: class.base.clone(), coeffs: levels })
}

/// A basis of local solutions at `point`, each with `terms` u-levels.
pub fn frobenius_basis(form: &ThetaForm, point: &SingularPoint, order: usize, terms: usize) -> Result<Vec<FrobeniusSolution>, MonodromyError> {
    let mut out = Vec::new();
    for class in classes(form, point, order)? {
        for v in &class.basis {
            out.push(extend(form, &class, v, terms)?);
        }
    }
    Ok(out)
}

/// θ applied to u^e Σ c[m][j] u^m log^j u.
fn theta(e: &BigRational, c: &[Vec<NFElement>]) -> Vec<Vec<NFElement>> {
    c.iter()
        .enumerate()
        .map(|(m, row)| {
            let x = e + BigRational::from_integer((m as i64).into());
            (0..row.len())
                .map(|j| {
                    let mut v = row[j].scale(&x);
                    if j + 1 < row.len() {
                        v = v.add(&row[j + 1].scale(&BigRational::from_integer(((j + 1) as i64).into())));
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// L y vanishes in every u-level the truncation determines.
pub fn residual_vanishes(form: &ThetaForm, sol: &FrobeniusSolution) -> bool {
    let levels = sol.coeffs.len();
    let zero = NFElement::zero(&form.field);
    let width = sol.coeffs.first().map_or(0, Vec::len);
    let mut total = vec![vec![zero.clone(); width]; levels];
    for i in 0..levels {
        let f = form.term(i);
        let mut power = sol.coeffs.clone();
        for (k, fk) in f.iter().enumerate() {
            if k > 0 {
                power = theta(&sol.exponent, &power);
            }
            if fk.is_zero() {
                continue;
            }
            for m in 0..levels - i {
                for j in 0..width {
                    if !power[m][j].is_zero() {
                        total[m + i][j] = total[m + i][j].add(&fk.mul(&power[m][j]));
                    }
                }
            }
        }
    }
    total.iter().flatten().all(NFElement::is_zero) && sol.coeffs.iter().flatten().any(|x| !x.is_zero())
}

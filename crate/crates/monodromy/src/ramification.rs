use std::fmt;

use exactnum::{format_rational, rational::frac, BigRational, NFElement};
use num_traits::Zero;
use qde::DiffOperator;
use rayon::prelude::*;

use crate::error::MonodromyError;
use crate::frobenius::{classes, ExponentClass};
use crate::linalg::rank;
use crate::points::{localize, singular_points, PointKind, SingularPoint};

/// Jordan form of (log T_s)/(2πi) at one point.
#[derive(Clone, Debug)]
pub struct LocalMonodromy {
    pub point: SingularPoint,
    pub exponents: Vec<(BigRational, usize)>,
    /// (eigenvalue in [0, 1), size), sorted by eigenvalue then size descending.
    pub blocks: Vec<(BigRational, usize)>,
}

impl LocalMonodromy {
    /// dim V / V^T = N - number of blocks with eigenvalue 0.
    pub fn contribution(&self) -> usize {
        let n: usize = self.blocks.iter().map(|b| b.1).sum();
        n - self.blocks.iter().filter(|b| b.0.is_zero()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.contribution() == 0
    }
}

fn shift_log(v: &[NFElement], width: usize) -> Vec<NFElement> {
    let zero = NFElement::zero(v[0].field());
    let mut out = vec![zero; v.len()];
    for (m, level) in v.chunks(width).enumerate() {
        for j in 0..width - 1 {
            out[m * width + j] = level[j + 1].scale(&BigRational::from_integer(((j + 1) as i64).into()));
        }
    }
    out
}

fn class_blocks(class: &ExponentClass) -> Vec<usize> {
    let cols = class.basis[0].len();
    let mut ranks = vec![class.basis.len()];
    let mut cur = class.basis.clone();
    while *ranks.last().unwrap() > 0 {
        cur = cur.iter().map(|v| shift_log(v, class.width)).collect();
        ranks.push(rank(cur.clone(), cols));
    }
    ranks.push(0);
    // Blocks of size >= s: ranks[s-1] - ranks[s].
    let at_least: Vec<usize> = (1..ranks.len()).map(|s| ranks[s - 1] - ranks[s]).collect();
    let mut sizes = Vec::new();
    for s in 1..=at_least.len() {
        let exact = at_least[s - 1] - at_least.get(s).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(s, exact));
    }
    sizes
}

pub fn local_log_monodromy(op: &DiffOperator, s: &SingularPoint) -> Result<LocalMonodromy, MonodromyError> {
    let form = localize(op, s);
    if form.indicial_degree() != op.order() {
        return Err(MonodromyError::NotFuchsian(s.label()));
    }
    let cls = classes(&form, s, op.order())?;
    let mut blocks = Vec::new();
    let mut exponents = Vec::new();
    for c in &cls {
        let eig = frac(&c.base);
        blocks.extend(class_blocks(c).into_iter().map(|k| (eig.clone(), k)));
        exponents.extend(c.exponents.iter().cloned());
    }
    if blocks.iter().map(|b| b.1).sum::<usize>() != op.order() {
        return Err(MonodromyError::Internal(format!("{}: block sizes do not sum to the order", s.label())));
    }
    blocks.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    exponents.sort();
    Ok(LocalMonodromy { point: s.clone(), exponents, blocks })
}

#[derive(Clone, Debug)]
pub struct PointContribution {
    pub monodromy: LocalMonodromy,
    pub contribution: usize,
    pub conjugates: usize,
}

#[derive(Clone, Debug)]
pub struct RamificationReport {
    pub per_point: Vec<PointContribution>,
    pub rf: usize,
    pub rank: usize,
    pub defect: i64,
}

impl RamificationReport {
    pub fn is_extremal(&self) -> bool {
        self.defect == 0
    }

    pub fn verdict(&self) -> String {
        match self.defect {
            0 => "extremal".into(),
            d if d < 0 => format!("ANOMALY: negative defect {d}"),
            d => format!("defect {d}"),
        }
    }
}

pub fn ramification(op: &DiffOperator) -> Result<RamificationReport, MonodromyError> {
    let points = singular_points(op)?;
    let per_point = points
        .par_iter()
        .map(|s| {
            let m = local_log_monodromy(op, s)?;
            Ok(PointContribution { contribution: m.contribution(), conjugates: s.conjugates(), monodromy: m })
        })
        .collect::<Result<Vec<_>, MonodromyError>>()?;
    let rf = per_point.iter().map(|p| p.contribution * p.conjugates).sum::<usize>();
    let rank = op.order();
    Ok(RamificationReport { per_point, rf, rank, defect: rf as i64 - 2 * rank as i64 })
}

/// For a quadratic factor x^2 + bx + c, recompute at the conjugate root -b - α and
/// compare; `None` for points without a quadratic factor.
pub fn galois_spot_check(op: &DiffOperator, s: &SingularPoint) -> Result<Option<bool>, MonodromyError> {
    if s.kind != PointKind::Finite || s.field.degree() != 2 {
        return Ok(None);
    }
    let b = s.field.minimal_polynomial().coeff(1);
    let conj = NFElement::from_rational(&s.field, -b).sub(&s.root);
    let here = local_log_monodromy(op, s)?;
    let there = local_log_monodromy(op, &s.at_root(conj))?;
    Ok(Some(here.blocks == there.blocks && here.exponents == there.exponents))
}

impl fmt::Display for LocalMonodromy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ex: Vec<String> = self
            .exponents
            .iter()
            .map(|(e, m)| if *m == 1 { format_rational(e) } else { format!("{}^{m}", format_rational(e)) })
            .collect();
        let bl: Vec<String> = self.blocks.iter().map(|(e, k)| format!("({}, {k})", format_rational(e))).collect();
        write!(f, "{}: exponents {{{}}} blocks [{}]", self.point.label(), ex.join(", "), bl.join(", "))
    }
}

impl fmt::Display for RamificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.per_point {
            writeln!(f, "{}  contribution {} x {}", p.monodromy, p.contribution, p.conjugates)?;
        }
        write!(f, "rf = {}, rank = {}, defect = {}: {}", self.rf, self.rank, self.defect, self.verdict())
    }
}

//! Complete intersections in weighted projective space.

use series::TruncatedSeries;

use crate::error::PeriodError;
use crate::modeval::{evaluate, FnKernel, Kernel, NormalizedKernel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpsCiData {
    weights: Vec<u64>,
    degrees: Vec<u64>,
}

impl WpsCiData {
    pub fn new(weights: Vec<u64>, degrees: Vec<u64>) -> Result<Self, PeriodError> {
        if weights.is_empty() || weights.iter().chain(&degrees).any(|&x| x == 0) {
            return Err(PeriodError::InvalidWps("weights and degrees must be positive".into()));
        }
        for &d in &degrees {
            if let Some(w) = weights.iter().find(|&&w| d % w != 0) {
                return Err(PeriodError::InvalidWps(format!("weight {w} does not divide degree {d}")));
            }
        }
        let wd = WpsCiData { weights, degrees };
        if wd.index() <= 0 {
            return Err(PeriodError::InvalidWps("sum of weights must exceed sum of degrees".into()));
        }
        Ok(wd)
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// -k = Σ w_i - Σ d_j.
    pub fn index(&self) -> i64 {
        self.weights.iter().sum::<u64>() as i64 - self.degrees.iter().sum::<u64>() as i64
    }
}

pub(crate) fn wps_ci_kernel(wd: &WpsCiData, order: usize) -> Box<dyn Kernel> {
    let step = wd.index() as usize;
    let top = order / step;
    let big = wd.weights.iter().chain(&wd.degrees).copied().max().unwrap() as usize;
    let (w, dg) = (wd.weights.clone(), wd.degrees.clone());
    let raw = FnKernel::new(order, big * top, move |ctx, order| {
        let f = &ctx.f;
        let mut out = vec![0; order + 1];
        for d in 0..=order / step {
            let mut term = f.one();
            for &x in &dg {
                term = f.mul(term, ctx.fact[d * x as usize]);
            }
            for &x in &w {
                term = f.mul(term, ctx.inv_fact[d * x as usize]);
            }
            out[d * step] = term;
        }
        Ok(out)
    });
    Box::new(NormalizedKernel::new(Box::new(raw)))
}

pub fn period_wps_ci(wd: &WpsCiData, order: usize) -> Result<TruncatedSeries, PeriodError> {
    evaluate(wps_ci_kernel(wd, order).as_ref())
}

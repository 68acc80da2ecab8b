//! One-dimensional minimization on an interval.

use crate::error::{invalid, Result};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum<R> {
    pub x: R,
    pub value: R,
    pub iterations: usize,
}

/// Golden-section search for a unimodal `f` on `[lo, hi]`, stopping once
/// the bracket is narrower than `width`.
pub fn golden_section<R: Scalar>(f: impl Fn(R) -> R, lo: R, hi: R, width: R) -> Result<Minimum<R>> {
    if !(lo < hi) || !(width > R::zero()) {
        return Err(invalid(format!("bad bracket [{lo}, {hi}] or width {width}")));
    }
    let inv_phi = (R::lit(5.0).sqrt() - R::one()) / R::lit(2.0);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut iterations = 0;
    while b - a > width && iterations < 500 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        iterations += 1;
    }
    let x = (a + b) / R::lit(2.0);
    let fx = f(x);
    let best = [(x, fx), (c, fc), (d, fd)]
        .into_iter()
        .fold((x, fx), |acc, p| if p.1 < acc.1 { p } else { acc });
    Ok(Minimum {
        x: best.0,
        value: best.1,
        iterations,
    })
}

/// `count` points spaced evenly in log scale over `[lo, hi]`, `lo > 0`.
pub fn log_grid<R: Scalar>(lo: R, hi: R, count: usize) -> Result<Vec<R>> {
    if !(lo > R::zero()) || !(lo < hi) || count < 2 {
        return Err(invalid(format!("bad log grid [{lo}, {hi}] x {count}")));
    }
    let (la, lb) = (lo.ln(), hi.ln());
    let steps = R::from_usize(count - 1).expect("count fits");
    Ok((0..count)
        .map(|i| {
            let t = R::from_usize(i).expect("index fits") / steps;
            (la + (lb - la) * t).exp()
        })
        .collect())
}

/// Grid scan followed by golden-section polish between the neighbours of
/// the best grid point.
pub fn grid_then_golden<R: Scalar>(f: impl Fn(R) -> R, grid: &[R], width: R) -> Result<Minimum<R>> {
    let values: Vec<R> = grid.iter().map(|&t| f(t)).collect();
    let (best, _) = values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_nan())
        .fold((0usize, R::infinity()), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(grid.len() - 1)];
    let polished = golden_section(&f, lo, hi, width)?;
    Ok(if polished.value <= values[best] {
        polished
    } else {
        Minimum {
            x: grid[best],
            value: values[best],
            iterations: polished.iterations,
        }
    })
}

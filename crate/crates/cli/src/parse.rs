//! Parsers for the compact command-line value syntaxes.

use std::collections::BTreeMap;

use hyperconn::hypergraph::WeightDistribution;
use hyperconn::Error;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

/// `bernoulli:p=0.5,w=1`, `uniform:a=0,b=1` or `centered:base=1,scale=0.5`.
pub fn distribution(spec: &str) -> Result<WeightDistribution, Error> {
    let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut params = BTreeMap::new();
    for item in rest.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, got {item:?}")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| bad(format!("{k}: not a number: {v:?}")))?;
        params.insert(k.trim().to_string(), v);
    }
    let mut take = |names: &[&str], default: Option<f64>| -> Result<f64, Error> {
        names
            .iter()
            .find_map(|n| params.remove(*n))
            .or(default)
            .ok_or_else(|| bad(format!("{kind}: missing parameter {}", names[0])))
    };
    let dist = match kind.trim() {
        "bernoulli" => {
            let p = take(&["p"], None)?;
            let weight = take(&["w", "weight"], Some(1.0))?;
            WeightDistribution::BernoulliEdge { p, weight }
        }
        "uniform" => {
            let low = take(&["a", "low"], None)?;
            let high = take(&["b", "high"], None)?;
            WeightDistribution::UniformWeight { low, high }
        }
        "centered" => {
            let base = take(&["base"], Some(1.0))?;
            let scale = take(&["scale"], None)?;
            WeightDistribution::CenteredBounded { base, scale }
        }
        other => return Err(bad(format!("unknown distribution {other:?}"))),
    };
    if let Some(extra) = params.keys().next() {
        return Err(bad(format!("{kind}: unknown parameter {extra:?}")));
    }
    dist.validate()?;
    Ok(dist)
}

/// Comma-separated list (`0.5,1,2`) or inclusive range `start:stop:count`.
pub fn thetas(spec: &str) -> Result<Vec<f64>, Error> {
    let num = |s: &str| -> Result<f64, Error> {
        let v: f64 = s.trim().parse().map_err(|_| bad(format!("not a number: {s:?}")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad(format!("theta must be finite, got {s:?}")))
        }
    };
    let values = if let [start, stop, count] = spec.split(':').collect::<Vec<_>>()[..] {
        let (start, stop) = (num(start)?, num(stop)?);
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| bad(format!("range count must be an integer, got {count:?}")))?;
        match count {
            0 => Vec::new(),
            1 => vec![start],
            _ => (0..count)
                .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
                .collect(),
        }
    } else if spec.contains(':') {
        return Err(bad(format!("range must be start:stop:count, got {spec:?}")));
    } else {
        spec.split(',').map(num).collect::<Result<_, _>>()?
    };
    if values.is_empty() {
        return Err(bad("theta grid is empty"));
    }
    if values.windows(2).any(|w| w[0] > w[1]) {
        return Err(bad("theta grid must be sorted ascending"));
    }
    Ok(values)
}

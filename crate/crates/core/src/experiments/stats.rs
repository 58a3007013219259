use nalgebra::{DMatrix, SymmetricEigen};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpearmanResult {
    pub rho: f64,
    /// `ρ√((n−2)/(1−ρ²))`; infinite when `|ρ| = 1`.
    pub t: f64,
    /// Two-sided test at the 0.05 level.
    pub significant: bool,
    pub n: usize,
}

/// Fractional ranks starting at 1; tied values share their average rank.
pub fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let avg = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            out[i] = avg;
        }
        start = end;
    }
    out
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    (sxx > 0.0 && syy > 0.0).then(|| (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman's ρ as the Pearson correlation of fractional ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<SpearmanResult> {
    if x.len() != y.len() {
        return Err(Error::shape(format!(
            "spearman on {} and {} values",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    if n < 3 {
        return Err(Error::Precondition(format!(
            "spearman needs at least 3 pairs, got {n}"
        )));
    }
    if x.iter().chain(y).any(|v| v.is_nan()) {
        return Err(Error::Numeric("NaN in correlation input".into()));
    }
    let rho = pearson(&ranks(x), &ranks(y))
        .ok_or_else(|| Error::Degenerate("correlation undefined for a constant input".into()))?;
    let df = (n - 2) as f64;
    let t = if rho.abs() >= 1.0 {
        f64::INFINITY.copysign(rho)
    } else {
        rho * (df / (1.0 - rho * rho)).sqrt()
    };
    let critical = StudentsT::new(0.0, 1.0, df)
        .map_err(|e| Error::Numeric(e.to_string()))?
        .inverse_cdf(0.975);
    Ok(SpearmanResult {
        rho,
        t,
        significant: t.abs() > critical,
        n,
    })
}

/// Principal components of a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Pca {
    pub mean: Vec<f64>,
    /// Unit components, strongest first.
    pub components: Vec<Vec<f64>>,
    /// Sample variance along each kept component.
    pub variances: Vec<f64>,
    /// Trace of the sample covariance.
    pub total_variance: f64,
    /// Centred rows projected onto the components.
    pub coordinates: Vec<Vec<f64>>,
}

impl Pca {
    pub fn explained_ratio(&self) -> f64 {
        if self.total_variance == 0.0 {
            return 1.0;
        }
        self.variances.iter().sum::<f64>() / self.total_variance
    }
}

/// Projects mean-centred `rows` onto the top `dims` eigenvectors of their
/// sample covariance. Each component's largest-magnitude loading is made
/// positive.
pub fn pca_project(rows: &[Vec<f64>], dims: usize) -> Result<Pca> {
    let n = rows.len();
    if n < 2 {
        return Err(Error::Precondition(format!(
            "PCA needs at least 2 samples, got {n}"
        )));
    }
    let d = rows[0].len();
    if let Some(r) = rows.iter().find(|r| r.len() != d) {
        return Err(Error::shape(format!(
            "row of {} features among rows of {d}",
            r.len()
        )));
    }
    if dims == 0 || dims > d {
        return Err(Error::config(format!(
            "cannot keep {dims} components of {d}-dimensional data"
        )));
    }
    let mut mean = vec![0.0; d];
    for r in rows {
        for (m, v) in mean.iter_mut().zip(r) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);
    let centred = DMatrix::from_fn(n, d, |i, j| rows[i][j] - mean[j]);
    let cov = (centred.transpose() * &centred) / (n - 1) as f64;
    let total_variance = cov.trace();
    let eig = SymmetricEigen::new(cov);

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .total_cmp(&eig.eigenvalues[a])
            .then(a.cmp(&b))
    });
    let mut components = Vec::with_capacity(dims);
    let mut variances = Vec::with_capacity(dims);
    for &k in order.iter().take(dims) {
        let mut v: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        let pivot = v
            .iter()
            .enumerate()
            .fold((0, 0.0f64), |best, (i, &x)| {
                if x.abs() > best.1 {
                    (i, x.abs())
                } else {
                    best
                }
            })
            .0;
        if v[pivot] < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        variances.push(eig.eigenvalues[k].max(0.0));
        components.push(v);
    }
    let coordinates = (0..n)
        .map(|i| {
            components
                .iter()
                .map(|c| centred.row(i).iter().zip(c).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    Ok(Pca {
        mean,
        components,
        variances,
        total_variance,
        coordinates,
    })
}

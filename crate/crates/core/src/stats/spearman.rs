use super::{two_sided_t, StatsError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationResult {
    pub rho: f64,
    pub p_value: f64,
    pub n: usize,
}

/// 1-based ranks, tied values sharing the mean of their positions.
pub fn mid_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)
}

fn check(xs: &[f64], ys: &[f64]) -> Result<(), StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::DegenerateInput(format!(
            "length mismatch ({} vs {})",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 3 {
        return Err(StatsError::DegenerateInput(format!(
            "need at least 3 pairs, got {}",
            xs.len()
        )));
    }
    if xs.iter().any(|v| !v.is_finite()) || ys.iter().any(|v| !v.is_finite()) {
        return Err(StatsError::DegenerateInput("non-finite value".into()));
    }
    let constant = |v: &[f64]| v.iter().all(|&a| a == v[0]);
    if constant(xs) || constant(ys) {
        return Err(StatsError::DegenerateInput("constant vector".into()));
    }
    Ok(())
}

fn snap(rho: f64) -> f64 {
    if 1.0 - rho.abs() < 1e-12 {
        rho.signum()
    } else {
        rho
    }
}

/// Spearman rank correlation (Pearson correlation of mid-ranks) with a
/// two-sided p-value from the t approximation on `n - 2` degrees of freedom.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<CorrelationResult, StatsError> {
    check(xs, ys)?;
    let n = xs.len();
    let rho = snap(pearson(&mid_ranks(xs), &mid_ranks(ys)));
    let p_value = if rho.abs() == 1.0 {
        0.0
    } else {
        let df = (n - 2) as f64;
        two_sided_t(rho * (df / (1.0 - rho * rho)).sqrt(), df)
    };
    Ok(CorrelationResult { rho, p_value, n })
}

/// Spearman rho with an exact two-sided permutation p-value (`n <= 10`).
pub fn spearman_exact_p(xs: &[f64], ys: &[f64]) -> Result<CorrelationResult, StatsError> {
    check(xs, ys)?;
    let n = xs.len();
    if n > 10 {
        return Err(StatsError::DegenerateInput(format!(
            "exact permutation test limited to n <= 10, got {}",
            n
        )));
    }
    let rx = mid_ranks(xs);
    let mut ry = mid_ranks(ys);
    let observed = snap(pearson(&rx, &ry));
    let threshold = observed.abs() - 1e-12;

    // Heap's algorithm over every arrangement of the y ranks
    let mut hits = 0u64;
    let mut total = 0u64;
    let mut c = vec![0usize; n];
    let mut visit = |ry: &[f64]| {
        total += 1;
        if pearson(&rx, ry).abs() >= threshold {
            hits += 1;
        }
    };
    visit(&ry);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                ry.swap(0, i);
            } else {
                ry.swap(c[i], i);
            }
            visit(&ry);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(CorrelationResult {
        rho: observed,
        p_value: hits as f64 / total as f64,
        n,
    })
}

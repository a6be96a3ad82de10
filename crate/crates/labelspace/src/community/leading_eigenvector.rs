//! Recursive spectral bisection on the modularity matrix.
//!
//! Each community is split by the sign pattern of the leading eigenvector of
//! its generalized modularity matrix `B(g)_ij = A_ij - s_i s_j / (2W) -
//! delta_ij * sum_k B_ik`. The eigenvector is found by power iteration on the
//! spectrally shifted matrix `B(g) + sigma I`, which pins the most positive
//! eigenvalue as dominant. Recursion stops when the leading eigenvalue is not
//! positive, the eigenvector has one sign, the community is a singleton, or
//! the split would not increase Q.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::view::GraphView;
use super::{CommunityError, DetectorConfig};

pub(super) fn run(
    view: &GraphView,
    config: &DetectorConfig,
) -> Result<Vec<Vec<usize>>, CommunityError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut queue: std::collections::VecDeque<Vec<usize>> = std::collections::VecDeque::new();
    queue.push_back((0..view.len()).collect());
    let mut finished = Vec::new();

    while let Some(group) = queue.pop_front() {
        if group.len() < 2 {
            finished.push(group);
            continue;
        }
        match try_split(view, &group, config, &mut rng)? {
            Some((positive, negative)) => {
                queue.push_back(positive);
                queue.push_back(negative);
            }
            None => finished.push(group),
        }
    }
    Ok(finished)
}

/// Sign-split outcome: the positive and negative sides, or `None` when the
/// group is final.
type SplitOutcome = Option<(Vec<usize>, Vec<usize>)>;

/// Attempts one sign split; `None` means the group is final.
fn try_split(
    view: &GraphView,
    group: &[usize],
    config: &DetectorConfig,
    rng: &mut ChaCha8Rng,
) -> Result<SplitOutcome, CommunityError> {
    let n = group.len();
    let two_w = 2.0 * view.total_weight();
    let mut local = vec![usize::MAX; view.len()];
    for (i, &v) in group.iter().enumerate() {
        local[v] = i;
    }

    // Dense generalized modularity matrix restricted to the group.
    let mut matrix = vec![0.0f64; n * n];
    for (i, &v) in group.iter().enumerate() {
        let s_v = view.strength(v);
        for (j, &u) in group.iter().enumerate() {
            matrix[i * n + j] = -s_v * view.strength(u) / two_w;
        }
        for &(u, w) in view.neighbors(v) {
            if local[u] != usize::MAX {
                matrix[i * n + local[u]] += w;
            }
        }
    }
    for i in 0..n {
        let row_sum: f64 = (0..n).map(|j| matrix[i * n + j]).sum();
        matrix[i * n + i] -= row_sum;
    }

    let shift = (0..n)
        .map(|i| (0..n).map(|j| matrix[i * n + j].abs()).sum::<f64>())
        .fold(0.0f64, f64::max);
    for i in 0..n {
        matrix[i * n + i] += shift;
    }

    let (eigenvalue_shifted, vector) =
        power_iteration(&matrix, n, config.eigen_tolerance, config.eigen_max_iterations, rng)?;
    let eigenvalue = eigenvalue_shifted - shift;
    if eigenvalue <= config.eigen_tolerance * (1.0 + shift) {
        return Ok(None);
    }

    // Zero components count as positive.
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for (i, &v) in group.iter().enumerate() {
        if vector[i] >= 0.0 {
            positive.push(v);
        } else {
            negative.push(v);
        }
    }
    if positive.is_empty() || negative.is_empty() {
        return Ok(None);
    }

    if modularity_gain(view, group, &positive, &negative) <= 1e-12 {
        return Ok(None);
    }
    Ok(Some((positive, negative)))
}

/// Q(g1) + Q(g2) - Q(g), all other communities untouched.
fn modularity_gain(view: &GraphView, group: &[usize], g1: &[usize], g2: &[usize]) -> f64 {
    let total = view.total_weight();
    let two_w = 2.0 * total;
    let term = |members: &[usize]| -> f64 {
        let mut local = vec![false; view.len()];
        for &v in members {
            local[v] = true;
        }
        let mut intra = 0.0;
        let mut strength = 0.0;
        for &v in members {
            strength += view.strength(v);
            for &(u, w) in view.neighbors(v) {
                if u > v && local[u] {
                    intra += w;
                }
            }
        }
        intra / total - (strength / two_w).powi(2)
    };
    term(g1) + term(g2) - term(group)
}

fn power_iteration(
    matrix: &[f64],
    n: usize,
    tolerance: f64,
    max_iterations: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(f64, Vec<f64>), CommunityError> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(-0.5..0.5)).collect();
    normalize(&mut v);

    let matvec = |v: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| (0..n).map(|j| matrix[i * n + j] * v[j]).sum())
            .collect()
    };
    let scale = (0..n)
        .map(|i| (0..n).map(|j| matrix[i * n + j].abs()).sum::<f64>())
        .fold(0.0f64, f64::max)
        .max(1.0);

    // Primary stop: small eigenpair residual. Secondary stop: the Rayleigh
    // quotient has stalled, which happens when the two leading eigenvalues
    // nearly coincide — the iterate keeps rotating inside their span, but
    // any direction in that span is an equally valid split candidate (the
    // modularity-gain check still guards the split itself).
    let mut residual = f64::INFINITY;
    let mut last_eigenvalue = f64::INFINITY;
    for _ in 0..max_iterations {
        let image = matvec(&v);
        let norm = image.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-300 {
            // The iterate landed in the kernel of the shifted matrix; there
            // is no positive direction to find.
            return Ok((0.0, v));
        }
        let eigenvalue: f64 = v.iter().zip(&image).map(|(a, b)| a * b).sum();
        residual = v
            .iter()
            .zip(&image)
            .map(|(a, b)| (b - eigenvalue * a).abs())
            .fold(0.0f64, f64::max);
        if residual < tolerance * scale
            || (eigenvalue - last_eigenvalue).abs() < tolerance * scale / 100.0
        {
            return Ok((eigenvalue, v));
        }
        last_eigenvalue = eigenvalue;
        v = image;
        for x in &mut v {
            *x /= norm;
        }
    }
    Err(CommunityError::EigenNoConvergence {
        iterations: max_iterations,
        residual,
    })
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

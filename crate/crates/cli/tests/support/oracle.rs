//! Straightforward reference implementations, written independently of the
//! library: compensated summation, Welford updates and an O(n^2) duplicate scan.

pub fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &v in values {
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    Some(sum / values.len() as f64)
}

pub fn sample_stddev(values: &[f64]) -> Option<f64> {
    if values.len() < 2 {
        return None;
    }
    let (mut m, mut m2) = (0.0, 0.0);
    for (i, &v) in values.iter().enumerate() {
        let d = v - m;
        m += d / (i + 1) as f64;
        m2 += d * (v - m);
    }
    Some((m2 / (values.len() - 1) as f64).sqrt())
}

/// Hyndman and Fan definition 7, using 1-based positions.
pub fn quantile(values: &[f64], p: f64) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let h = 1.0 + (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    Some(sorted[lo - 1] + (h - lo as f64) * (sorted[hi - 1] - sorted[lo - 1]))
}

/// Pearson r via running co-moments over the complete pairs.
pub fn pearson(x: &[Option<f64>], y: &[Option<f64>]) -> Option<(f64, usize)> {
    let (mut n, mut mx, mut my, mut c, mut sx, mut sy) = (0usize, 0.0, 0.0, 0.0, 0.0, 0.0);
    let mut seen: Vec<(f64, f64)> = Vec::new();
    for (a, b) in x.iter().zip(y) {
        let (Some(a), Some(b)) = (a, b) else { continue };
        n += 1;
        let dx = a - mx;
        mx += dx / n as f64;
        let dy = b - my;
        my += dy / n as f64;
        c += dx * (b - my);
        sx += dx * (a - mx);
        sy += dy * (b - my);
        seen.push((*a, *b));
    }
    let constant = |f: fn(&(f64, f64)) -> f64| seen.iter().all(|p| f(p) == f(&seen[0]));
    if n < 2 || constant(|p| p.0) || constant(|p| p.1) {
        return None;
    }
    Some(((c / (sx * sy).sqrt()).clamp(-1.0, 1.0), n))
}

/// Groups of identical rows as (first row, all member rows), compared
/// pairwise. `keep` selects the columns that make up the row key.
pub fn duplicate_groups(rows: &[Vec<Option<String>>], keep: &[usize]) -> Vec<(usize, Vec<usize>)> {
    let same = |a: &Vec<Option<String>>, b: &Vec<Option<String>>| keep.iter().all(|&c| a[c] == b[c]);
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for j in 0..rows.len() {
        if let Some(first) = (0..j).find(|&i| same(&rows[i], &rows[j])) {
            match groups.iter_mut().find(|g| g.0 == first) {
                Some(g) => g.1.push(j),
                None => groups.push((first, vec![first, j])),
            }
        }
    }
    groups.sort_by_key(|g| g.0);
    groups
}

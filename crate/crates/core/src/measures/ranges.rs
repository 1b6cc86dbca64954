//! Finite unions of intervals treated up to endpoints (Lebesgue-null sets).

/// Sorts and merges overlapping or touching pairs.
pub fn normalize(mut v: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    v.retain(|(a, b)| a < b);
    v.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(v.len());
    for (a, b) in v {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

/// `base` minus the union of `remove`.
pub fn subtract(base: &[(f64, f64)], remove: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let remove = normalize(remove.to_vec());
    let mut out = Vec::new();
    for &(a, b) in base {
        let mut cur = a;
        for &(ra, rb) in &remove {
            if rb <= cur || ra >= b {
                continue;
            }
            if ra > cur {
                out.push((cur, ra));
            }
            cur = cur.max(rb);
            if cur >= b {
                break;
            }
        }
        if cur < b {
            out.push((cur, b));
        }
    }
    out
}

pub fn total_length(v: &[(f64, f64)]) -> f64 {
    v.iter().map(|(a, b)| b - a).sum()
}

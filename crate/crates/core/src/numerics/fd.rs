//! Fourth-order finite differences, central in the interior and one-sided
//! within two steps of an endpoint.

/// `f'(x)` on `[lo, hi]`.
pub fn first_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64, lo: f64, hi: f64) -> f64 {
    if x - 2.0 * h >= lo && x + 2.0 * h <= hi {
        (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
    } else if x - 2.0 * h < lo {
        forward_first(|i| f(x + i as f64 * h), h)
    } else {
        -forward_first(|i| f(x - i as f64 * h), h)
    }
}

/// `f''(x)` on `[lo, hi]`.
pub fn second_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64, lo: f64, hi: f64) -> f64 {
    if x - 2.0 * h >= lo && x + 2.0 * h <= hi {
        (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h))
            / (12.0 * h * h)
    } else if x - 2.0 * h < lo {
        forward_second(|i| f(x + i as f64 * h), h)
    } else {
        forward_second(|i| f(x - i as f64 * h), h)
    }
}

fn forward_first<G: Fn(usize) -> f64>(g: G, h: f64) -> f64 {
    (-25.0 * g(0) + 48.0 * g(1) - 36.0 * g(2) + 16.0 * g(3) - 3.0 * g(4)) / (12.0 * h)
}

fn forward_second<G: Fn(usize) -> f64>(g: G, h: f64) -> f64 {
    (45.0 * g(0) - 154.0 * g(1) + 214.0 * g(2) - 156.0 * g(3) + 61.0 * g(4) - 10.0 * g(5))
        / (12.0 * h * h)
}

/// Slopes at every point of a uniform grid (at least 5 points).
pub fn grid_first_derivative(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    assert!(n >= 5, "need at least 5 grid points");
    (0..n)
        .map(|i| {
            if i >= 2 && i + 2 < n {
                (values[i - 2] - 8.0 * values[i - 1] + 8.0 * values[i + 1] - values[i + 2])
                    / (12.0 * h)
            } else if i < 2 {
                forward_first(|j| values[i + j], h)
            } else {
                -forward_first(|j| values[i - j], h)
            }
        })
        .collect()
}

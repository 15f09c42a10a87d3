/// Five-point central difference, error `O(h^4)`.
pub fn central_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (8.0 * (f(x + h) - f(x - h)) - (f(x + 2.0 * h) - f(x - 2.0 * h))) / (12.0 * h)
}

/// Five-point forward difference, error `O(h^4)`.
pub fn forward_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-25.0 * f(x) + 48.0 * f(x + h) - 36.0 * f(x + 2.0 * h) + 16.0 * f(x + 3.0 * h)
        - 3.0 * f(x + 4.0 * h))
        / (12.0 * h)
}

/// Central stencil when it stays at or above `lower`, forward otherwise.
pub fn derivative_above<F: Fn(f64) -> f64>(f: F, x: f64, h: f64, lower: f64) -> f64 {
    if x - 2.0 * h >= lower {
        central_derivative(f, x, h)
    } else {
        forward_derivative(f, x, h)
    }
}

/// Five-point central second derivative, error `O(h^4)`.
pub fn central_second_derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-(f(x + 2.0 * h) + f(x - 2.0 * h)) + 16.0 * (f(x + h) + f(x - h)) - 30.0 * f(x))
        / (12.0 * h * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn stencils() {
        let f = |x: f64| (1.3 * x).sin() + x.powi(3);
        let d = |x: f64| 1.3 * (1.3 * x).cos() + 3.0 * x * x;
        let dd = |x: f64| -1.69 * (1.3 * x).sin() + 6.0 * x;
        assert_relative_eq!(central_derivative(f, 0.7, 1e-3), d(0.7), max_relative = 1e-11);
        assert_relative_eq!(forward_derivative(f, 0.7, 1e-3), d(0.7), max_relative = 1e-9);
        assert_relative_eq!(derivative_above(f, 0.001, 1e-3, 0.0), d(0.001), max_relative = 1e-9);
        assert_relative_eq!(central_second_derivative(f, 0.7, 1e-3), dd(0.7), max_relative = 1e-7);
    }
}

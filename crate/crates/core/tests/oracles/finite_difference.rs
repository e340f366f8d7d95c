//! Fourth-order central differences of complex-valued functions on `ℝᵈ`.

pub const STEP: f64 = 1e-3;

pub fn partial(f: &dyn Fn(&[f64]) -> (f64, f64), x: &[f64], i: usize) -> (f64, f64) {
    let at = |t: f64| {
        let mut y = x.to_vec();
        y[i] += t;
        f(&y)
    };
    let h = STEP;
    let (a, b, c, d) = (at(-2.0 * h), at(-h), at(h), at(2.0 * h));
    let re = (a.0 - 8.0 * b.0 + 8.0 * c.0 - d.0) / (12.0 * h);
    let im = (a.1 - 8.0 * b.1 + 8.0 * c.1 - d.1) / (12.0 * h);
    (re, im)
}

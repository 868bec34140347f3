const D1: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
const D2: [f64; 4] = [8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0];
const D2_CENTER: f64 = -205.0 / 72.0;

/// (f, f′, f″) at x by eighth-order central differences with spacing h.
pub fn central_derivatives<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> (f64, f64, f64) {
    let f0 = f(x);
    let (mut d1, mut d2) = (0.0, D2_CENTER * f0);
    for (j, (c1, c2)) in D1.iter().zip(D2.iter()).enumerate() {
        let s = (j + 1) as f64 * h;
        let (fp, fm) = (f(x + s), f(x - s));
        d1 += c1 * (fp - fm);
        d2 += c2 * (fp + fm);
    }
    (f0, d1 / h, d2 / (h * h))
}

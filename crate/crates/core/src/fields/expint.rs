//! Exponential integral `E₁(z) = ∫_z^∞ e^{-t}/t dt` on the principal branch.

use num_complex::Complex64;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `E₁(z)` for `z ≠ 0`, cut along the negative real axis.
pub(crate) fn e1(z: Complex64) -> Complex64 {
    if z.norm() < 4.0 {
        series(z)
    } else {
        continued_fraction(z)
    }
}

fn series(z: Complex64) -> Complex64 {
    // -γ - ln z - Σ (-z)ⁿ/(n·n!)
    let mut sum = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for n in 1..200 {
        term *= -z / n as f64;
        let add = term / n as f64;
        sum += add;
        if add.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - sum
}

fn continued_fraction(z: Complex64) -> Complex64 {
    // modified Lentz on e^{-z} / (z + 1 - 1²/(z + 3 - 2²/(z + 5 - ...)))
    let tiny = 1e-300;
    let mut b = z + 1.0;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..20_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    h * (-z).exp()
}

//! Cylinder functions, the Wronskian identity and the complete elliptic integral.

use scatter::specfun::{bessel_j, bessel_y, cylinder, elliptic_k, hankel1, wronskian_jy};

fn main() -> scatter::Result<()> {
    println!("{:>4} {:>22} {:>22} {:>10}", "n", "J_n(6)", "Y_n(6)", "wronskian");
    for n in [0, 1, 2, 5, 10, 20, 40] {
        let c = cylinder(n, 6.0)?;
        let rel = (c.wronskian() - wronskian_jy(6.0)) / wronskian_jy(6.0);
        println!("{n:>4} {:>22.15e} {:>22.15e} {rel:>10.1e}", bessel_j(n, 6.0)?, bessel_y(n, 6.0)?);
    }

    // |H_n(x)| decreases in x at fixed order.
    let h: Vec<f64> = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|&x| hankel1(8, x).map(|h| h.value.norm()))
        .collect::<scatter::Result<_>>()?;
    let h: Vec<String> = h.iter().map(|v| format!("{v:.4e}")).collect();
    println!("|H_8(x)| at x = 1, 2, 5, 10: {}", h.join(", "));

    for k in [0.0, 0.5, 0.9, 0.99] {
        println!("K({k}) = {:.16}", elliptic_k(k)?);
    }
    Ok(())
}

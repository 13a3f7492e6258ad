// Rate coefficients of the field bath across the mass gap, in vacuum and at
// finite temperature.

use massent::field_bath::FieldBathConfig;

pub fn run_example() -> massent::Result<Vec<(f64, f64, f64)>> {
    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>10}",
        "m/omega", "Omega", "lambda", "A1", "A1(T=0.5)"
    );
    let mut rows = Vec::new();
    for mass in [0.0, 0.5, 0.8, 0.995, 1.0, 1.5] {
        let vac = FieldBathConfig::dimensionless(mass, 1.0, None)?;
        let hot = FieldBathConfig::dimensionless(mass, 1.0, Some(0.5))?;
        let (k, kt) = (vac.coefficients(), hot.coefficients());
        println!(
            "{mass:>8} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            vac.gray_factor(),
            vac.spatial_factor(),
            k.a1,
            kt.a1
        );
        rows.push((mass, k.a1, kt.a1 / kt.b1));
    }
    Ok(rows)
}

fn main() -> massent::Result<()> {
    run_example()?;
    Ok(())
}

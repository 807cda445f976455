//! Reflected amplitude of both layer models over random flows, frequencies
//! and damping values.

use smith_pml::report::reflect_report;

fn main() -> smith_pml::Result<()> {
    let r = reflect_report(14, 500, 160.0)?;
    print!("{}", r.csv);
    eprintln!("worst {:.2e}, reflectionless {}", r.worst, r.passed);
    Ok(())
}

//! Writing a certificate as CSV and as a run manifest.

use chaoslab::chaos::khintchine_check;
use chaoslab::report::{write_report, ReportFormat};

fn main() -> chaoslab::Result<()> {
    let report = khintchine_check(&[1.0, 1.0], 4.0)?;
    print!("{}", report.to_csv());

    let dir = std::env::temp_dir();
    let csv = dir.join("chaoslab_khintchine.csv");
    let manifest = dir.join("chaoslab_khintchine.manifest.json");
    write_report(&report, &csv, ReportFormat::Csv)?;
    write_report(&report, &manifest, ReportFormat::Manifest)?;
    println!("wrote {} and {}", csv.display(), manifest.display());
    Ok(())
}

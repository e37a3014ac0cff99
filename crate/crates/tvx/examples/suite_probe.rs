use std::time::Instant;
use tvx::verify::{run_suite, SuiteParams};

fn main() {
    let name = std::env::args().nth(1).unwrap();
    let params = SuiteParams::default();
    let t0 = Instant::now();
    match run_suite(&name, &params) {
        Ok(report) => {
            let fails: Vec<_> = report.cases.iter().filter(|c| !c.pass).collect();
            eprintln!(
                "suite {name}: {} cases, pass={} in {:?}",
                report.cases.len(),
                report.pass,
                t0.elapsed()
            );
            for f in fails.iter().take(5) {
                eprintln!("  FAIL {}: {}", f.id, f.detail);
            }
        }
        Err(e) => eprintln!("suite {name}: ERROR {e}"),
    }
}

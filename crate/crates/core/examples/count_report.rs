//! Count reports and the verification matrix, as the command-line tool
//! produces them.

use zdsemi::report::{cmd_verify, count_report, Method, RunConfig};
use zdsemi::TargetGraph;

fn main() -> zdsemi::Result<()> {
    let cfg = RunConfig::default();

    let r = count_report(TargetGraph::CompleteK { n: 4 }, &Method::ALL, &cfg)?;
    print!("{}", r.render_text());

    let r = count_report(TargetGraph::CompletePlusEnd { n: 3 }, &Method::ALL, &cfg)?;
    print!("{}", r.render_text());
    println!(
        "consistent: {}, findings: {}",
        r.is_consistent(),
        r.findings().count()
    );

    let v = cmd_verify(1, 3, &cfg)?;
    print!("{}", v.render_text());
    println!("verify ok: {}", v.is_ok());
    Ok(())
}

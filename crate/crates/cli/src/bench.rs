use adaseg::bench::{time_scaling, LINEAR_MAX_RATIO, QUADRATIC_RATIO_RANGE};
use adaseg::{Method, Segmenter};
use anyhow::bail;

use crate::output::write_file;
use crate::{max_regressors, BenchArgs};

pub fn run(args: BenchArgs) -> anyhow::Result<()> {
    let segmenter = Segmenter::new(args.method, max_regressors(args.max_degree)?);
    let report = time_scaling(segmenter, &args.ns, args.k, args.repeats, args.seed)?;

    println!("{} k={} repeats={}", args.method, args.k, args.repeats);
    println!("{:>10}  {:>12}", "n", "median (s)");
    for p in &report.points {
        println!("{:>10}  {:>12.6}", p.n, p.median_secs);
    }
    let allowed = match args.method {
        Method::Optimal => format!("{}..{}", QUADRATIC_RATIO_RANGE.0, QUADRATIC_RATIO_RANGE.1),
        _ => format!("<= {LINEAR_MAX_RATIO}"),
    };
    for s in &report.steps {
        let verdict = match s.pass {
            Some(true) => "ok",
            Some(false) => "FAIL",
            None => "not a doubling",
        };
        println!(
            "{} -> {}: x{:.2} (allowed {allowed}) {verdict}",
            s.from, s.to, s.ratio
        );
    }
    if let Some(path) = &args.output {
        write_file(path, &report.to_csv())?;
    }
    match report.verdict() {
        Some(false) => bail!("runtime growth outside the allowed ratio {allowed}"),
        Some(true) => println!("scaling verdict: pass"),
        None => println!("scaling verdict: none (no doubling step)"),
    }
    Ok(())
}

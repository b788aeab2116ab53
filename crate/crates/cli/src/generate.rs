use std::io::Write;

use adaseg::{generate, GeneratorSpec};

use crate::output::sink;
use crate::GenerateArgs;

pub fn run(args: GenerateArgs) -> anyhow::Result<()> {
    let spec = GeneratorSpec {
        kind: args.kind,
        n: args.n,
        seed: args.seed,
        mu: args.mu,
        sigma: args.sigma,
    };
    let series = generate(&spec)?;
    let mut out = sink(args.output.as_deref())?;
    // `{}` on f64 prints the shortest text that parses back to the same bits
    for (x, y) in series.points() {
        writeln!(out, "{x},{y}")?;
    }
    out.flush()?;
    eprintln!(
        "{} n={} seed={} mu={} sigma={} -> {}",
        spec.kind,
        spec.n,
        spec.seed,
        spec.mu,
        spec.sigma,
        args.output
            .as_ref()
            .map_or("stdout".into(), |p| p.display().to_string()),
    );
    Ok(())
}

use std::fmt::Write as _;

use adaseg::{generate, run_experiment, GeneratorKind, GeneratorSpec, Method, TimeSeries};
use anyhow::Context;
use serde_json::json;

use crate::input::{csv_files, InputError};
use crate::output::write_file;
use crate::{ExperimentArgs, Suite};

pub fn run(args: ExperimentArgs) -> anyhow::Result<()> {
    if args.trials == 0 {
        return Err(InputError::Usage("--trials must be at least 1".into()).into());
    }
    let (title, mut series) = match args.suite {
        Suite::Whitenoise => (
            "white noise".to_string(),
            synthetic(&args, GeneratorKind::WhiteNoise)?,
        ),
        Suite::Randomwalk => (
            "random walks".to_string(),
            synthetic(&args, GeneratorKind::RandomWalk)?,
        ),
        Suite::CsvDir => {
            let dir = args
                .input
                .as_deref()
                .ok_or_else(|| InputError::Usage("the csv-dir suite needs --input <DIR>".into()))?;
            let series = csv_files(dir)?
                .into_iter()
                .take(args.trials)
                .map(|path| args.io.file(path).read())
                .collect::<anyhow::Result<Vec<_>>>()?;
            (dir.display().to_string(), series)
        }
    };
    if let Some(w) = args.window {
        series = series
            .iter()
            .map(|s| s.window(w.start, w.len))
            .collect::<Result<_, _>>()?;
    }

    let report = run_experiment(&series, &args.k, !args.no_loo)?;
    std::fs::create_dir_all(&args.output)
        .with_context(|| format!("cannot create {}", args.output.display()))?;
    let json = json!({
        "suite": title,
        "trials": report.trials,
        "lengths": series.iter().map(TimeSeries::len).collect::<Vec<_>>(),
        "report": report,
    });
    write_file(
        &args.output.join("report.json"),
        &serde_json::to_string_pretty(&json)?,
    )?;
    let text = report.to_text(&title);
    write_file(&args.output.join("report.txt"), &text)?;
    for method in Method::ALL {
        let mut csv = String::from("k,mean_fit,mean_loo\n");
        for (k, fit, loo) in report.plot_rows(method) {
            let loo = loo.map(|v| v.to_string()).unwrap_or_default();
            writeln!(csv, "{k},{fit},{loo}")?;
        }
        write_file(
            &args.output.join(format!("plot_{}.csv", method.name())),
            &csv,
        )?;
    }
    print!("{text}");
    Ok(())
}

fn synthetic(args: &ExperimentArgs, kind: GeneratorKind) -> anyhow::Result<Vec<TimeSeries>> {
    (0..args.trials as u64)
        .map(|i| {
            let seed = args.seed.wrapping_add(i);
            Ok(generate(&GeneratorSpec::new(kind, args.n, seed))?)
        })
        .collect()
}

use std::io::Write;

use adaseg::{leave_one_out, Segmenter};
use serde_json::json;

use crate::output::{create, sink};
use crate::{max_regressors, SegmentArgs};

pub fn run(args: SegmentArgs) -> anyhow::Result<()> {
    let mut series = args.io.file(args.input.clone()).read()?;
    if let Some(w) = args.window {
        series = series.window(w.start, w.len)?;
    }
    let segmenter = Segmenter::new(args.method, max_regressors(args.max_degree)?);
    let seg = segmenter.segment(&series, args.k)?;

    let mut report = json!({
        "method": args.method.name(),
        "k": args.k,
        "max_degree": args.max_degree,
        "n": series.len(),
    });
    if let (Some(obj), serde_json::Value::Object(fields)) = (report.as_object_mut(), seg.to_json())
    {
        obj.extend(fields);
    }
    if args.loo {
        let loo = leave_one_out(&series, segmenter, args.k)?;
        report["loo"] = json!({
            "rms": loo.rms,
            "per_point_errors": loo.per_point_errors,
        });
    }

    let mut out = sink(args.output.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    out.flush()?;

    if let Some(path) = &args.plot_data {
        let mut plot = create(path)?;
        seg.write_plot_csv(&series, &mut plot)?;
        plot.flush()?;
    }
    Ok(())
}

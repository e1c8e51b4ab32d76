//! Report rendering: JSON lines (one object per check plus a summary object)
//! or a human-readable text table.

use schurq_core::engine::{CheckReport, CheckStatus};

#[derive(Clone, Copy, Debug, Default)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub report_only: usize,
    pub wall_ms: u128,
}

pub fn summarize(reports: &[CheckReport], wall_ms: u128) -> Summary {
    let mut s = Summary {
        wall_ms,
        ..Summary::default()
    };
    for r in reports {
        match r.status {
            CheckStatus::Pass => s.pass += 1,
            CheckStatus::Fail => s.fail += 1,
            CheckStatus::ReportOnly => s.report_only += 1,
        }
    }
    s
}

pub fn render_json(reports: &[CheckReport], summary: &Summary) -> String {
    let mut out = String::new();
    for r in reports {
        let mut obj = serde_json::Map::new();
        obj.insert("check".into(), r.check.into());
        obj.insert("params".into(), r.params.clone().into());
        obj.insert("status".into(), r.status.as_str().into());
        if let Some(w) = &r.witness {
            obj.insert("witness".into(), w.to_string().into());
        }
        obj.insert(
            "elapsed_ms".into(),
            serde_json::Value::from(r.elapsed.as_millis() as u64),
        );
        out.push_str(&serde_json::Value::Object(obj).to_string());
        out.push('\n');
    }
    let summary_obj = serde_json::json!({
        "summary": {
            "pass": summary.pass,
            "fail": summary.fail,
            "report_only": summary.report_only,
            "wall_ms": summary.wall_ms as u64,
        }
    });
    out.push_str(&summary_obj.to_string());
    out.push('\n');
    out
}

pub fn render_text(reports: &[CheckReport], summary: &Summary) -> String {
    let mut out = String::new();
    for r in reports {
        let status = match r.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::ReportOnly => "REPORT",
        };
        out.push_str(&format!(
            "{status:<6} {:<28} {} ({} ms)",
            r.check,
            r.params,
            r.elapsed.as_millis()
        ));
        if let Some(w) = &r.witness {
            out.push_str(&format!("  witness: {w}"));
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "summary: pass={} fail={} report_only={} wall_ms={}\n",
        summary.pass, summary.fail, summary.report_only, summary.wall_ms
    ));
    out
}

//! Plain-text output.

use std::fmt::Write;

use overdet::io::ProlongedDump;
use overdet::jet::{Counts, MinimalOrders};
use overdet::oracle::RootSet;
use overdet::pipeline::{Certificate, JetSolveOutcome};
use overdet::rank::RankReport;
use overdet::reduction::{Elimination, ReductionOutcome, ReductionStep, SideCondition, Status};
use overdet::Scalar;

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

pub fn counts(c: &Counts, bound: &Scalar) -> String {
    let mut s = format!(
        "N_H   = {}\nN_S   = {}\nN_H^w = {}\nN_S^w = {}\nactive unknown bound = {bound}\n",
        c.n_h, c.n_s, c.n_h_w, c.n_s_w
    );
    if c.n_h < c.n_s {
        s += "warning: fewer equations than unknowns (N_H < N_S)\n";
    }
    s
}

pub fn minimal(r: &MinimalOrders) -> String {
    let mut s = format!(
        "minimal orders = {}\nN_H = {}, N_S = {}\nestimate = {} ({})\ndistances = {}\n",
        join(&r.orders, ","),
        r.n_h,
        r.n_s,
        r.estimate,
        if r.estimate_holds { "N_H >= estimate" } else { "N_H below estimate" },
        join(&r.distances, ", "),
    );
    if !r.estimate_holds {
        s += "warning: minimum falls below the closed-form estimate\n";
    }
    s
}

pub fn prolonged(d: &ProlongedDump) -> String {
    let mut s = String::new();
    for e in &d.equations {
        let _ = writeln!(s, "P{:<4} k={} i=[{}]  {}", e.alpha, e.k, join(&e.i, ","), e.polynomial);
    }
    let c = &d.counts;
    let _ = writeln!(
        s,
        "{} equations; N_H = {}, N_S = {}, N_H^w = {}, N_S^w = {}",
        d.equations.len(),
        c.n_h,
        c.n_s,
        c.n_h_w,
        c.n_s_w
    );
    s
}

fn condition(c: &SideCondition) -> String {
    format!("{} != 0  [{:?}, {:?}]", c.polynomial, c.source, c.status())
}

fn step(i: usize, st: &ReductionStep) -> String {
    let kind = serde_json::to_value(st.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let mut s = format!("  {:>3}. {kind}", i + 1);
    if let Some(v) = &st.variable {
        let _ = write!(s, " in {v}");
    }
    s.push('\n');
    if !st.inputs.is_empty() {
        let _ = writeln!(s, "       in:  {}", join(&st.inputs, " ; "));
    }
    if !st.outputs.is_empty() {
        let _ = writeln!(s, "       out: {}", join(&st.outputs, " ; "));
    }
    for c in &st.conditions {
        let _ = writeln!(s, "       assume {}", condition(c));
    }
    if let Some(n) = &st.note {
        let _ = writeln!(s, "       note: {n}");
    }
    s
}

fn steps(trace: &[ReductionStep]) -> String {
    let mut s = String::from("steps:\n");
    for (i, st) in trace.iter().enumerate() {
        s += &step(i, st);
    }
    s
}

pub fn outcome(o: &ReductionOutcome, trace: bool) -> String {
    let status = match o.status {
        Status::Solved => "solved",
        Status::Inconsistent => "inconsistent",
        Status::Residual => "residual",
        Status::Degenerate => "degenerate",
    };
    let mut s = format!("status: {status}\n");
    for sol in &o.solutions {
        let parts: Vec<String> = sol.0.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        let _ = writeln!(s, "  {}", parts.join(", "));
    }
    if !o.residual_system.is_empty() {
        s += "residual system:\n";
        for f in &o.residual_system {
            let _ = writeln!(s, "  {f} = 0");
        }
    }
    if !o.conditions.is_empty() {
        s += "conditions:\n";
        for c in &o.conditions {
            let _ = writeln!(s, "  {}", condition(c));
        }
    }
    if trace {
        s += &steps(&o.trace);
    }
    s
}

pub fn jet_outcome(o: &JetSolveOutcome, trace: bool) -> String {
    let mut s = outcome(&o.outcome, trace);
    for (i, c) in o.certificates.iter().enumerate() {
        match c {
            Certificate::Report(r) => {
                let _ = write!(s, "solution {}: ", i + 1);
                s += &rank(r);
            }
            Certificate::Failed { error } => {
                let _ = writeln!(s, "solution {}: not certified: {error}", i + 1);
            }
        }
    }
    s
}

pub fn elimination(e: &Elimination, trace: bool) -> String {
    let mut s = format!("pivot (equation {}): {}\n", e.pivot_index + 1, e.pivot);
    if e.degenerate {
        s += "warning: every pair reduction was degenerate\n";
    }
    s += &format!("reduced system without {}:\n", e.variable);
    for f in &e.reduced {
        let _ = writeln!(s, "  {f} = 0");
    }
    for lf in &e.linear_forms {
        let _ = writeln!(s, "linear: ({})*{} + ({}) = 0", lf.lead, e.variable, lf.constant);
    }
    for f in &e.unresolved {
        let _ = writeln!(s, "unresolved: {f} = 0");
    }
    if trace {
        s += &steps(&e.trace);
    }
    s
}

pub fn rank(r: &RankReport) -> String {
    format!(
        "rank {} of {} occurring unknowns ({})\n  N_H = {}, N_S = {}, active bound = {} ({})\n",
        r.rank,
        r.n_s_real,
        if r.certified { "certified" } else { "not certified" },
        r.n_h,
        r.n_s,
        r.active_bound,
        if r.bound_11_holds { "holds" } else { "exceeded" },
    )
}

pub fn roots(r: &RootSet) -> String {
    let mut s = format!("{} point(s) in ({})\n", r.points.len(), r.variables.join(", "));
    for p in &r.points {
        let _ = writeln!(s, "  ({})", join(p, ", "));
    }
    s
}

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::output::{Cell, Format, PendingWrites, RowSet};
use super::plot;
use super::{CliError, ClonerArg, Command, DcArg, FamilyArg, FbArg, Flags, FormatArg, SamplerArg, SweepArg};
use crate::broadcast::{
    broadcast_report_with, scatter_dataset, surface_grid, sweep, Conventions, RangeResult, Scan, SweepRow, SweepSpec,
    DEFAULT_GRID,
};
use crate::cloners::ClonerKind;
use crate::measures::{
    dense_coding_capacity, ppt_verdict_bloch, teleportation_fidelity, DcFormula, FbConvention, CLASSICAL_TF,
};
use crate::reference::{conflict_for, paper_tables, table, PaperRange, PaperTable};
use crate::reproduce::{calibrate, run_tables, Semantics, SumColumn, TableRun};
use crate::states::{
    bell_diagonal, purity, sample_with_seed, werner_like, BellDiagonalParams, BlochState, Sampler, WernerLikeParams,
};

type CliResult<T> = Result<T, CliError>;

const DEFAULT_SAMPLES: usize = 5000;
const DEFAULT_SURFACE_GRID: usize = 100;

pub(super) fn dispatch(cmd: Command, file: Flags) -> CliResult<String> {
    match cmd {
        Command::State(f) => state(f.merged_with(file)),
        Command::Range(f) => range(f.merged_with(file)),
        Command::Report(f) => report(f.merged_with(file)),
        Command::Tables(f) => tables(f.merged_with(file)),
        Command::Scatter(f) => scatter(f.merged_with(file)),
        Command::Surface(f) => surface(f.merged_with(file)),
        Command::Calibrate(f) => calibrate_cmd(f.merged_with(file)),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn format_of(f: &Flags) -> Format {
    match f.format {
        Some(FormatArg::Json) => Format::Json,
        _ => Format::Csv,
    }
}

fn cloner_of(f: &Flags) -> ClonerKind {
    match f.cloner {
        Some(ClonerArg::Nonlocal) => ClonerKind::Nonlocal,
        _ => ClonerKind::Local,
    }
}

fn sampler_of(f: &Flags) -> Sampler {
    match f.sampler {
        Some(SamplerArg::Bloch) => Sampler::BlochRejection,
        _ => Sampler::HilbertSchmidt,
    }
}

fn conventions_of(f: &Flags) -> Conventions {
    Conventions {
        dc: match f.dc_formula {
            Some(DcArg::Clamped) => DcFormula::Clamped,
            _ => DcFormula::Unclamped,
        },
        fb: match f.fb {
            Some(FbArg::Squared) => FbConvention::Squared,
            _ => FbConvention::Root,
        },
    }
}

/// DC variants to report: the requested one, or both.
fn dc_variants(f: &Flags) -> Vec<DcFormula> {
    match f.dc_formula {
        Some(_) => vec![conventions_of(f).dc],
        None => DcFormula::ALL.to_vec(),
    }
}

fn check_plot(f: &Flags) -> CliResult<()> {
    if f.emit_plot {
        if f.out.is_none() {
            return Err(usage("--emit-plot needs --out so the script can reference the data file"));
        }
        if f.format == Some(FormatArg::Json) {
            return Err(usage("--emit-plot needs CSV output"));
        }
    }
    Ok(())
}

fn require<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| usage(format!("missing required flag {flag}")))
}

fn bell_coefficients(f: &Flags) -> CliResult<[f64; 3]> {
    let c = f.c.as_ref().ok_or_else(|| usage("missing required flag --c c1,c2,c3"))?;
    <[f64; 3]>::try_from(c.as_slice()).map_err(|_| usage(format!("--c takes exactly three values, got {}", c.len())))
}

/// Input state from the family flags, with a description of its parameters.
fn input_state(f: &Flags) -> CliResult<(BlochState, Vec<(&'static str, Cell)>)> {
    match require(f.family, "--family")? {
        FamilyArg::Werner => {
            let (p, a) = (require(f.p, "--p")?, require(f.alpha2, "--alpha2")?);
            let s = werner_like(WernerLikeParams::new(p, a)?);
            Ok((s, vec![("family", "werner".into()), ("p", p.into()), ("alpha2", a.into())]))
        }
        FamilyArg::Belldiag => {
            let [c1, c2, c3] = bell_coefficients(f)?;
            let s = bell_diagonal(BellDiagonalParams::new(c1, c2, c3)?);
            Ok((s, vec![("family", "belldiag".into()), ("c1", c1.into()), ("c2", c2.into()), ("c3", c3.into())]))
        }
        FamilyArg::Random => {
            let seed = f.seed.unwrap_or(0);
            let sampler = sampler_of(f);
            let name = match sampler {
                Sampler::HilbertSchmidt => "hs",
                Sampler::BlochRejection => "bloch",
            };
            let s = sample_with_seed(seed, sampler);
            Ok((s, vec![("family", "random".into()), ("sampler", name.into()), ("seed", Cell::Int(seed as i64))]))
        }
    }
}

fn describe(params: &[(&'static str, Cell)]) -> String {
    params
        .iter()
        .map(|(k, v)| match v {
            Cell::Text(s) => s.clone(),
            Cell::Num(x) => format!("{k} = {}", super::output::fmt_g(*x)),
            Cell::Int(i) => format!("{k} = {i}"),
            other => format!("{k} = {other:?}"),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn vec3(v: &nalgebra::Vector3<f64>) -> String {
    format!("({}, {}, {})", g(v[0]), g(v[1]), g(v[2]))
}

fn g(x: f64) -> String {
    super::output::fmt_g(x)
}

fn bloch_cells(s: &BlochState) -> Vec<(&'static str, Cell)> {
    const X: [&str; 3] = ["x1", "x2", "x3"];
    const Y: [&str; 3] = ["y1", "y2", "y3"];
    const T: [&str; 9] = ["t11", "t12", "t13", "t21", "t22", "t23", "t31", "t32", "t33"];
    let mut out: Vec<(&'static str, Cell)> = Vec::new();
    out.extend(X.iter().zip(s.x.iter()).map(|(k, v)| (*k, Cell::from(*v))));
    out.extend(Y.iter().zip(s.y.iter()).map(|(k, v)| (*k, Cell::from(*v))));
    out.extend(T.iter().enumerate().map(|(n, k)| (*k, Cell::from(s.t[(n / 3, n % 3)]))));
    out
}

/// Writes `rows` when `--out` is set; otherwise returns `text`, or the
/// rendered rows when there is no text or `--format` was given.
fn finish(
    f: &Flags,
    text: Option<String>,
    rows: &RowSet,
    script: Option<fn(&Path, &RowSet) -> String>,
) -> CliResult<String> {
    let format = format_of(f);
    match &f.out {
        Some(path) => {
            let mut pending = PendingWrites::default();
            pending.add(path.clone(), rows.render(format)?);
            if let (true, Some(script)) = (f.emit_plot, script) {
                pending.add(path.with_extension("gp"), script(path, rows));
            }
            let mut out = text.unwrap_or_default();
            for p in pending.paths() {
                let _ = writeln!(out, "wrote {}", p.display());
            }
            pending.commit()?;
            Ok(out)
        }
        None => match text {
            Some(t) if f.format.is_none() => Ok(t),
            _ => Ok(rows.render(format)?),
        },
    }
}

fn state(f: Flags) -> CliResult<String> {
    check_plot(&f)?;
    let (s, params) = input_state(&f)?;
    let rho = s.density_unchecked();
    let pur = purity(&s);
    let v = ppt_verdict_bloch(&s)?;
    let tf = teleportation_fidelity(&s)?;
    let dc_u = dense_coding_capacity(&rho, DcFormula::Unclamped)?;
    let dc_c = dense_coding_capacity(&rho, DcFormula::Clamped)?;

    let mut text = String::new();
    let _ = writeln!(text, "state       {}", describe(&params));
    let _ = writeln!(text, "x           {}", vec3(&s.x));
    let _ = writeln!(text, "y           {}", vec3(&s.y));
    for i in 0..3 {
        let label = if i == 0 { "T" } else { "" };
        let _ = writeln!(text, "{label:<12}[{}, {}, {}]", g(s.t[(i, 0)]), g(s.t[(i, 1)]), g(s.t[(i, 2)]));
    }
    let _ = writeln!(text, "purity      {}", g(pur));
    let _ = writeln!(
        text,
        "PPT         min eigenvalue {} -> {}",
        g(v.min_pt_eigenvalue),
        if v.inseparable { "inseparable" } else { "separable" }
    );
    let _ = writeln!(
        text,
        "TF          {} ({})",
        g(tf),
        if tf > CLASSICAL_TF { "beats classical 2/3" } else { "classical" }
    );
    let _ = writeln!(text, "DC          unclamped {} bits, clamped {} bits", g(dc_u), g(dc_c));

    let mut record = params;
    record.extend(bloch_cells(&s));
    record.extend([
        ("purity", pur.into()),
        ("min_pt_eigenvalue", v.min_pt_eigenvalue.into()),
        ("inseparable", v.inseparable.into()),
        ("tf", tf.into()),
        ("dc_unclamped", dc_u.into()),
        ("dc_clamped", dc_c.into()),
    ]);
    finish(&f, Some(text), &RowSet::from_records(vec![record]), None)
}

fn range_scan(f: &Flags) -> CliResult<Scan> {
    match require(f.family, "--family")? {
        FamilyArg::Werner => {
            let sweep = match (f.sweep, f.alpha2, f.p) {
                (Some(s), _, _) => s,
                (None, Some(_), None) => SweepArg::P,
                (None, None, Some(_)) => SweepArg::Alpha2,
                (None, Some(_), Some(_)) => return Err(usage("both --p and --alpha2 given; choose one with --sweep")),
                (None, None, None) => return Err(usage("range needs --alpha2 (to sweep p) or --p (to sweep alpha2)")),
            };
            match sweep {
                SweepArg::P => Ok(Scan::WernerP { alpha2: require(f.alpha2, "--alpha2")? }),
                SweepArg::Alpha2 => Ok(Scan::WernerAlpha2 { p: require(f.p, "--p")? }),
                _ => Err(usage("the Werner-like family sweeps p or alpha2")),
            }
        }
        FamilyArg::Belldiag => {
            let fixed = bell_coefficients(f)?;
            let swept = match f.sweep {
                Some(SweepArg::C1) => 0,
                Some(SweepArg::C2) => 1,
                Some(SweepArg::C3) => 2,
                _ => return Err(usage("a Bell-diagonal range needs --sweep c1|c2|c3")),
            };
            Ok(Scan::Bell { fixed, swept })
        }
        FamilyArg::Random => Err(usage("ranges are defined for the werner and belldiag families")),
    }
}

fn fixed_cells(scan: &Scan) -> Vec<(&'static str, Cell)> {
    let fixed = scan.fixed();
    let mut out = Vec::new();
    for (k, (name_col, value_col)) in
        [("fixed_param_name", "fixed_param_value"), ("fixed_param2_name", "fixed_param2_value")].into_iter().enumerate()
    {
        match fixed.get(k) {
            Some((name, value)) => {
                out.push((name_col, Cell::from(*name)));
                out.push((value_col, Cell::from(*value)));
            }
            None => {
                out.push((name_col, Cell::Na));
                out.push((value_col, Cell::Na));
            }
        }
    }
    out
}

fn hull_cells(r: &RangeResult) -> (Cell, Cell) {
    match r.hull() {
        Some((lo, hi)) => (lo.into(), hi.into()),
        None => (Cell::Na, Cell::Na),
    }
}

fn range(f: Flags) -> CliResult<String> {
    check_plot(&f)?;
    let scan = range_scan(&f)?;
    let spec = SweepSpec::new(scan, cloner_of(&f), f.copies.unwrap_or(2)).with_grid(f.grid.unwrap_or(DEFAULT_GRID));
    let row = sweep(&spec)?;

    let fixed: Vec<String> = scan.fixed().iter().map(|(k, v)| format!("{k} = {}", g(*v))).collect();
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} ({}): {} range, {} cloner, {} copies",
        scan.family(),
        fixed.join(", "),
        scan.variable(),
        spec.cloner.name(),
        spec.n_copies
    );
    let _ = writeln!(text, "  closed form  {}", row.analytic);
    let _ = writeln!(text, "  numeric      {}  (grid {}, endpoints bisected to 1e-6)", row.range, spec.grid);

    let (alo, ahi) = hull_cells(&row.analytic);
    let (nlo, nhi) = hull_cells(&row.range);
    let mut record = vec![("family", Cell::from(scan.family()))];
    record.extend(fixed_cells(&scan));
    record.extend([
        ("swept", Cell::from(scan.variable())),
        ("cloner", spec.cloner.name().into()),
        ("n_copies", spec.n_copies.into()),
        ("grid", spec.grid.into()),
        ("analytic_range", row.analytic.to_string().into()),
        ("analytic_lo", alo),
        ("analytic_hi", ahi),
        ("range", row.range.to_string().into()),
        ("range_lo", nlo),
        ("range_hi", nhi),
    ]);
    finish(&f, Some(text), &RowSet::from_records(vec![record]), None)
}

fn report(f: Flags) -> CliResult<String> {
    check_plot(&f)?;
    let (s, params) = input_state(&f)?;
    let cloner = cloner_of(&f);
    let n = f.copies.unwrap_or(2);
    let conv = conventions_of(&f);
    let r = broadcast_report_with(&s, cloner, n, conv)?;

    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut text = String::new();
    let _ = writeln!(text, "input               {}", describe(&params));
    let _ = writeln!(text, "cloner              {} (N = {n}), {conv}", cloner.name());
    let _ = writeln!(text, "input inseparable   {}", yes(r.input_inseparable));
    let _ = writeln!(
        text,
        "desired pair        {} (min PT eigenvalue {})",
        if r.desired_pair_inseparable { "inseparable" } else { "separable" },
        g(r.desired_verdict.min_pt_eigenvalue)
    );
    let _ = writeln!(
        text,
        "side pairs          {} (min PT eigenvalues {}, {})",
        if r.side_pair_separable { "separable" } else { "inseparable" },
        g(r.side_verdicts[0].min_pt_eigenvalue),
        g(r.side_verdicts[1].min_pt_eigenvalue)
    );
    let _ = writeln!(text, "broadcast           {}", yes(r.broadcast_ok));
    let _ = writeln!(text, "FB                  {}", g(r.fb));
    let _ = writeln!(text, "dTF                 {}", g(r.dtf));
    let _ = writeln!(text, "dDC                 {}", g(r.ddc));
    let _ = writeln!(text, "dTF + FB            {}", g(r.sum_tf));
    let _ = writeln!(text, "dDC + FB            {}", g(r.sum_dc));
    let _ = writeln!(text, "purity              {}", g(r.purity));
    if r.anomaly {
        let _ = writeln!(text, "note                cloning increased the teleportation fidelity");
    }

    let mut record = params;
    record.extend([
        ("cloner", Cell::from(cloner.name())),
        ("n_copies", n.into()),
        ("dc_variant", conv.dc.name().into()),
        ("fb_variant", conv.fb.name().into()),
        ("input_inseparable", r.input_inseparable.into()),
        ("desired_pair_inseparable", r.desired_pair_inseparable.into()),
        ("desired_min_pt_eigenvalue", r.desired_verdict.min_pt_eigenvalue.into()),
        ("side_pair_separable", r.side_pair_separable.into()),
        ("broadcast_ok", r.broadcast_ok.into()),
        ("fb", r.fb.into()),
        ("dtf", r.dtf.into()),
        ("ddc", r.ddc.into()),
        ("sum_tf", r.sum_tf.into()),
        ("sum_dc", r.sum_dc.into()),
        ("purity", r.purity.into()),
        ("anomaly", r.anomaly.into()),
    ]);
    finish(&f, Some(text), &RowSet::from_records(vec![record]), None)
}

fn selected_tables(f: &Flags) -> CliResult<Vec<&'static PaperTable>> {
    let which = f.which.as_deref().unwrap_or("all");
    if which.trim().eq_ignore_ascii_case("all") {
        return Ok(paper_tables().iter().collect());
    }
    which.split(',').map(|id| table(id).map_err(CliError::from)).collect()
}

fn grid_of(f: &Flags) -> usize {
    f.grid.unwrap_or(DEFAULT_GRID)
}

fn paper_range_text(r: &Option<PaperRange>) -> String {
    match r {
        None => "NA".to_string(),
        Some(r) => format!(
            "{}{}, {}{}",
            match r.lo_open {
                Some(true) => "(",
                Some(false) => "[",
                None => "",
            },
            g(r.lo),
            g(r.hi),
            match r.hi_open {
                Some(true) => ")",
                Some(false) => "]",
                None => "",
            }
        ),
    }
}

fn range_delta(paper: &Option<PaperRange>, row: &SweepRow) -> Cell {
    match (paper, row.range.hull()) {
        (None, None) => Cell::Num(0.0),
        (Some(p), Some((lo, hi))) => Cell::from((p.lo - lo).abs().max((p.hi - hi).abs())),
        _ => Cell::Na,
    }
}

fn extrema_cell(e: Option<crate::broadcast::Extrema>, pick: Semantics) -> Cell {
    e.map(|e| pick.pick(&e)).into()
}

fn table_rows(run: &TableRun, fb: FbConvention, dcs: &[DcFormula]) -> RowSet {
    let mut records = Vec::new();
    for (paper, row) in &run.rows {
        let conflict = conflict_for(run.table, paper).map(|c| {
            format!(
                "{} {} vs {} {}",
                c.tables.0,
                paper_range_text(&c.ranges.0),
                c.tables.1,
                paper_range_text(&c.ranges.1)
            )
        });
        for &dc in dcs {
            let sums = row.sums_for(Conventions { dc, fb });
            let (lo, hi) = hull_cells(&row.range);
            let (plo, phi) = match &paper.range {
                Some(r) => (Cell::from(r.lo), Cell::from(r.hi)),
                None => (Cell::Na, Cell::Na),
            };
            let mut rec = vec![("family", Cell::from(run.table.family.as_str()))];
            let fixed = fixed_cells(&row.spec.scan);
            rec.extend(fixed[..2].iter().cloned());
            rec.extend([
                ("n_copies", paper.n_copies.into()),
                ("cloner", run.table.cloner.as_str().into()),
                ("range_lo", lo),
                ("range_hi", hi),
                ("paper_range_lo", plo),
                ("paper_range_hi", phi),
                ("sum_tf_max", extrema_cell(sums.tf, Semantics::Max)),
                ("sum_dc_max", extrema_cell(sums.dc, Semantics::Max)),
                ("paper_sum_tf", paper.sum_tf.into()),
                ("paper_sum_dc", paper.sum_dc.into()),
                ("dc_variant", dc.name().into()),
                ("table", run.table.label.as_str().into()),
            ]);
            rec.extend(fixed[2..].iter().cloned());
            rec.extend([
                ("swept", Cell::from(row.spec.scan.variable())),
                ("range", row.range.to_string().into()),
                ("analytic_range", row.analytic.to_string().into()),
                ("paper_range", paper_range_text(&paper.range).into()),
                ("range_delta", range_delta(&paper.range, row)),
                ("fb_variant", fb.name().into()),
                ("sum_tf_min", extrema_cell(sums.tf, Semantics::Min)),
                ("sum_dc_min", extrema_cell(sums.dc, Semantics::Min)),
                ("sum_tf_at_lo", extrema_cell(sums.tf, Semantics::AtLo)),
                ("sum_tf_at_hi", extrema_cell(sums.tf, Semantics::AtHi)),
                ("sum_dc_at_lo", extrema_cell(sums.dc, Semantics::AtLo)),
                ("sum_dc_at_hi", extrema_cell(sums.dc, Semantics::AtHi)),
                ("anomaly", row.anomaly.into()),
                ("paper_conflict", conflict.clone().map_or(Cell::Na, Cell::from)),
            ]);
            records.push(rec);
        }
    }
    RowSet::from_records(records)
}

fn tables(f: Flags) -> CliResult<String> {
    check_plot(&f)?;
    let selected = selected_tables(&f)?;
    let fb = conventions_of(&f).fb;
    let dcs = dc_variants(&f);
    let runs = run_tables(&selected, grid_of(&f))?;

    let mut text = String::new();
    for run in &runs {
        let t = run.table;
        let _ = writeln!(text, "Table {} ({} cloner, {} range)", t.label, t.cloner, t.swept);
        for (paper, row) in &run.rows {
            let fixed: Vec<String> = paper.fixed.iter().map(|(k, v)| format!("{k}={}", g(*v))).collect();
            let sums = row.sums_for(Conventions { dc: dcs[0], fb });
            let tf = sums.tf.map_or("NA".into(), |e| format!("{:.3}", e.max));
            let dc = sums.dc.map_or("NA".into(), |e| format!("{:.3}", e.max));
            let _ = writeln!(
                text,
                "  {:<18} N={}  range {:<16} paper {:<14} tf_max {:<6} dc_max {:<6}",
                fixed.join(" "),
                paper.n_copies,
                row.range.to_string(),
                paper_range_text(&paper.range),
                tf,
                dc
            );
        }
    }

    let Some(dir) = &f.out else {
        return Ok(text);
    };
    let format = format_of(&f);
    let mut pending = PendingWrites::default();
    for run in &runs {
        let rows = table_rows(run, fb, &dcs);
        let path = dir.join(format!("table_{}.{}", run.table.id, format.extension()));
        if f.emit_plot {
            pending.add(path.with_extension("gp"), plot::table_script(&path, &rows));
        }
        pending.add(path, rows.render(format)?);
    }
    let mut paths: Vec<PathBuf> = pending.paths().map(Path::to_path_buf).collect();
    paths.sort();
    pending.commit()?;
    for p in paths {
        let _ = writeln!(text, "wrote {}", p.display());
    }
    Ok(text)
}

fn scatter(f: Flags) -> CliResult<String> {
    check_plot(&f)?;
    let cloner = cloner_of(&f);
    let rows = scatter_dataset(
        f.samples.unwrap_or(DEFAULT_SAMPLES),
        f.seed.unwrap_or(0),
        cloner,
        f.copies.unwrap_or(2),
        sampler_of(&f),
        conventions_of(&f),
    )?;
    let mut set = RowSet::new(["index", "purity", "sum_tf", "sum_dc", "broadcast_ok", "input_inseparable"]);
    for r in rows {
        set.push(vec![
            r.index.into(),
            r.purity.into(),
            r.sum_tf.into(),
            r.sum_dc.into(),
            r.broadcast_ok.into(),
            r.input_inseparable.into(),
        ]);
    }
    finish(&f, None, &set, Some(plot::scatter_script))
}

fn surface(f: Flags) -> CliResult<String> {
    check_plot(&f)?;
    let rows =
        surface_grid(cloner_of(&f), f.copies.unwrap_or(2), f.grid.unwrap_or(DEFAULT_SURFACE_GRID), conventions_of(&f))?;
    let mut set = RowSet::new(["alpha2", "p", "broadcast_ok", "sum_tf", "sum_dc"]);
    for r in rows {
        set.push(vec![r.alpha2.into(), r.p.into(), r.broadcast_ok.into(), r.sum_tf.into(), r.sum_dc.into()]);
    }
    finish(&f, None, &set, Some(plot::surface_script))
}

fn calibrate_cmd(f: Flags) -> CliResult<String> {
    if f.emit_plot {
        return Err(usage("calibrate does not emit plots"));
    }
    let selected = selected_tables(&f)?;
    let runs = run_tables(&selected, grid_of(&f))?;
    let cal = calibrate(&runs);

    let mut text = String::new();
    let _ = writeln!(text, "sum-column calibration over {} tables", runs.len());
    for column in [SumColumn::Tf, SumColumn::Dc] {
        let mut scores: Vec<_> = cal.scores.iter().filter(|s| s.column == column).collect();
        if scores.is_empty() {
            continue;
        }
        scores.sort_by(|a, b| {
            b.matched.cmp(&a.matched).then(a.mean_abs.partial_cmp(&b.mean_abs).unwrap_or(std::cmp::Ordering::Equal))
        });
        let _ = writeln!(text, "\n{} sums: matched within 0.05 / cells, mean |residual|", column.name().to_uppercase());
        for s in scores {
            let _ = writeln!(
                text,
                "  {:<28} {:<6} {:>3}/{:<3} mean {:.4}  max {:.4}",
                s.conventions.to_string(),
                s.semantics.name(),
                s.matched,
                s.cells,
                s.mean_abs,
                s.max_abs
            );
        }
        if let Some(best) = cal.best(column) {
            let _ = writeln!(text, "  best: {}, {}", best.conventions, best.semantics.name());
        }
    }
    let unmatched = cal.unmatched();
    let _ = writeln!(text, "\ncells unmatched under the best convention: {}", unmatched.len());
    for c in &unmatched {
        let _ = writeln!(
            text,
            "  Table {:<5} {:<16} N={} {}: paper {} recomputed {}",
            c.table,
            c.fixed,
            c.n_copies,
            c.column.name(),
            g(c.paper),
            c.recomputed.map_or("NA".into(), |r| format!("{r:.4}"))
        );
    }
    let conflicts = crate::reference::range_conflicts();
    let _ = writeln!(text, "\npublished range cells that disagree between companion tables: {}", conflicts.len());
    for c in &conflicts {
        let fixed: Vec<String> = c.fixed.iter().map(|(k, v)| format!("{k}={}", g(*v))).collect();
        let recomputed = runs
            .iter()
            .flat_map(|r| r.rows.iter())
            .find(|(p, _)| p.fixed == c.fixed && p.n_copies == c.n_copies)
            .map_or("not computed".to_string(), |(_, row)| row.range.to_string());
        let _ = writeln!(
            text,
            "  {} N={}: {} {} vs {} {}; recomputed {}",
            fixed.join(" "),
            c.n_copies,
            c.tables.0,
            paper_range_text(&c.ranges.0),
            c.tables.1,
            paper_range_text(&c.ranges.1),
            recomputed
        );
    }

    let Some(dir) = &f.out else {
        return Ok(text);
    };
    let format = format_of(&f);
    let mut scores = RowSet::new([
        "column",
        "dc_variant",
        "fb_variant",
        "semantics",
        "cells",
        "missing",
        "matched",
        "mean_abs",
        "max_abs",
    ]);
    for s in &cal.scores {
        scores.push(vec![
            s.column.name().into(),
            s.conventions.dc.name().into(),
            s.conventions.fb.name().into(),
            s.semantics.name().into(),
            s.cells.into(),
            s.missing.into(),
            s.matched.into(),
            s.mean_abs.into(),
            s.max_abs.into(),
        ]);
    }
    let mut cells = RowSet::new([
        "table",
        "row",
        "fixed",
        "n_copies",
        "column",
        "dc_variant",
        "fb_variant",
        "semantics",
        "paper",
        "recomputed",
        "residual",
        "matched",
    ]);
    for c in &cal.cells {
        cells.push(vec![
            c.table.into(),
            c.row.into(),
            c.fixed.clone().into(),
            c.n_copies.into(),
            c.column.name().into(),
            c.conventions.dc.name().into(),
            c.conventions.fb.name().into(),
            c.semantics.name().into(),
            c.paper.into(),
            c.recomputed.into(),
            c.residual().into(),
            c.matched().into(),
        ]);
    }
    let mut pending = PendingWrites::default();
    pending.add(dir.join(format!("calibration_scores.{}", format.extension())), scores.render(format)?);
    pending.add(dir.join(format!("calibration_cells.{}", format.extension())), cells.render(format)?);
    let paths: Vec<PathBuf> = pending.paths().map(Path::to_path_buf).collect();
    pending.commit()?;
    for p in paths {
        let _ = writeln!(text, "wrote {}", p.display());
    }
    Ok(text)
}

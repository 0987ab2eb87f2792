//! gnuplot scripts that read the CSV written next to them.

use std::path::Path;

use super::output::RowSet;

fn header(data: &Path, title: &str) -> (String, String) {
    let file = data.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
    let stem = data.file_stem().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
    let text = format!(
        "# {title}\n# usage: gnuplot {stem}.gp (from the directory holding {file})\n\
         set datafile separator ','\nset datafile missing 'NA'\n\
         set terminal pngcairo size 1200,500\nset output '{stem}.png'\n"
    );
    (text, file)
}

fn col(rows: &RowSet, name: &str) -> usize {
    rows.column_number(name).expect("plotted column exists")
}

/// Sums against purity, one panel per sum.
pub fn scatter_script(data: &Path, rows: &RowSet) -> String {
    let (mut s, file) = header(data, "complementarity sums of random states against purity");
    let (x, tf, dc) = (col(rows, "purity"), col(rows, "sum_tf"), col(rows, "sum_dc"));
    s.push_str("set multiplot layout 1,2\nset xlabel 'Tr[rho^2]'\nunset key\n");
    s.push_str(&format!("set ylabel 'dDC + FB'\nplot '{file}' using {x}:{dc} every ::1 with points pt 7 ps 0.3\n"));
    s.push_str(&format!("set ylabel 'dTF + FB'\nplot '{file}' using {x}:{tf} every ::1 with points pt 7 ps 0.3\n"));
    s.push_str("unset multiplot\n");
    s
}

/// Sums over the Werner-like `(alpha^2, p)` square, restricted to broadcast
/// points.
pub fn surface_script(data: &Path, rows: &RowSet) -> String {
    let (mut s, file) = header(data, "complementarity sums over the Werner-like parameter square");
    let (a, p, ok) = (col(rows, "alpha2"), col(rows, "p"), col(rows, "broadcast_ok"));
    let (tf, dc) = (col(rows, "sum_tf"), col(rows, "sum_dc"));
    s.push_str("set multiplot layout 1,2\nset xlabel 'alpha^2'\nset ylabel 'p'\nunset key\n");
    for (label, c) in [("dTF + FB", tf), ("dDC + FB", dc)] {
        s.push_str(&format!(
            "set zlabel '{label}'\nsplot '{file}' using {a}:{p}:(strcol({ok}) eq 'true' ? ${c} : 1/0) every ::1 with points pt 7 ps 0.3\n"
        ));
    }
    s.push_str("unset multiplot\n");
    s
}

/// Maximum sums per row against the fixed parameter, one series per copy
/// count.
pub fn table_script(data: &Path, rows: &RowSet) -> String {
    let (mut s, file) = header(data, "maximum complementarity sums per table row");
    let (x, n) = (col(rows, "fixed_param_value"), col(rows, "n_copies"));
    let (tf, dc) = (col(rows, "sum_tf_max"), col(rows, "sum_dc_max"));
    s.push_str("set multiplot layout 1,2\nset xlabel 'fixed parameter'\nset key left\n");
    for (label, c) in [("(dTF + FB) max", tf), ("(dDC + FB) max", dc)] {
        s.push_str(&format!("set ylabel '{label}'\nplot "));
        let series: Vec<String> = (2..=5)
            .map(|k| {
                format!("'{file}' using (${n} == {k} ? ${x} : 1/0):{c} every ::1 with linespoints title 'N = {k}'")
            })
            .collect();
        s.push_str(&series.join(", \\\n     "));
        s.push('\n');
    }
    s.push_str("unset multiplot\n");
    s
}

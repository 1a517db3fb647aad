use crate::rules::FusionReport;

/// Rounds to `precision` decimals, ties to even. `-0.000` prints as `0.000`.
pub fn format_value(x: f64, precision: usize) -> String {
    let s = format!("{x:.precision$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| c == '0' || c == '.') => rest.to_owned(),
        _ => s,
    }
}

/// Header and value row: rule, one column per nonempty set in bitmask
/// order, then ∅ and the total.
pub fn table_cells(report: &FusionReport, precision: usize) -> (Vec<String>, Vec<String>) {
    let m = &report.result;
    let frame = m.frame();
    let mut header = vec!["rule".to_owned()];
    let mut row = vec![report.rule.name().to_owned()];
    for (set, w) in m.focal_entries() {
        header.push(frame.render(set));
        row.push(format_value(w, precision));
    }
    header.push("∅".to_owned());
    row.push(format_value(m.conflict_weight(), precision));
    header.push("Σ".to_owned());
    row.push(format_value(m.total(), precision));
    (header, row)
}

/// Plain-text table with aligned columns.
pub fn render_table(report: &FusionReport, precision: usize) -> String {
    let (header, row) = table_cells(report, precision);
    let widths: Vec<usize> = header
        .iter()
        .zip(&row)
        .map(|(h, v)| h.chars().count().max(v.chars().count()))
        .collect();
    let line = |cells: &[String]| {
        let mut out = String::new();
        for (i, (cell, &width)) in cells.iter().zip(&widths).enumerate() {
            let pad = width - cell.chars().count();
            if i == 0 {
                out.push_str(cell);
                out.push_str(&" ".repeat(pad));
            } else {
                out.push_str("  ");
                out.push_str(&" ".repeat(pad));
                out.push_str(cell);
            }
        }
        out.trim_end().to_owned()
    };
    format!("{}\n{}\n", line(&header), line(&row))
}

pub fn render_csv(report: &FusionReport, precision: usize) -> String {
    let (header, row) = table_cells(report, precision);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    w.write_record(&row).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

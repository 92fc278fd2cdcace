use serde::{Deserialize, Serialize};

use crate::metrics::FiveNumberSummary;

/// One boxplot: five-number summary plus upper outliers of a distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxplotRow {
    pub project: String,
    pub n_developers: usize,
    pub n_microservices: usize,
    pub summary: FiveNumberSummary,
    /// Values above `Q3 + 1.5 * IQR`, ascending.
    pub outliers: Vec<f64>,
}

impl BoxplotRow {
    /// `None` for an empty distribution.
    pub fn new(project: &str, n_developers: usize, n_microservices: usize, values: &[f64]) -> Option<Self> {
        let summary = FiveNumberSummary::from_values(values.iter().copied())?;
        Some(Self {
            project: project.to_string(),
            n_developers,
            n_microservices,
            outliers: summary.upper_outliers(values),
            summary,
        })
    }
}

fn num(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// CSV with one row per project; outliers are `;`-separated.
pub fn emit_boxplot_data(rows: &[BoxplotRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "project",
        "n_developers",
        "n_microservices",
        "min",
        "q1",
        "median",
        "q3",
        "max",
        "outliers",
    ])
    .expect("in-memory write");
    for r in rows {
        let s = &r.summary;
        let outliers: Vec<String> = r.outliers.iter().map(|&v| num(v)).collect();
        w.write_record([
            r.project.clone(),
            r.n_developers.to_string(),
            r.n_microservices.to_string(),
            num(s.min),
            num(s.q1),
            num(s.median),
            num(s.q3),
            num(s.max),
            outliers.join(";"),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_distribution() {
        let row = BoxplotRow::new("p", 3, 2, &[3.0, 3.0, 3.0]).unwrap();
        assert!(row.outliers.is_empty());
        let csv = emit_boxplot_data(&[row]);
        assert_eq!(csv.lines().nth(1).unwrap(), "p,3,2,3,3,3,3,3,");
    }

    #[test]
    fn iqr_outlier_is_listed() {
        let row = BoxplotRow::new("p", 5, 4, &[1.0, 1.0, 1.0, 1.0, 100.0]).unwrap();
        assert_eq!(row.outliers, [100.0]);
        assert!(emit_boxplot_data(&[row]).ends_with(",100\n"));
    }

    #[test]
    fn single_developer() {
        let row = BoxplotRow::new("solo", 1, 3, &[2.0]).unwrap();
        assert_eq!(row.summary.min, row.summary.max);
        assert!(BoxplotRow::new("none", 0, 3, &[]).is_none());
    }

    #[test]
    fn fractional_quantiles_are_printed_exactly() {
        let row = BoxplotRow::new("p", 4, 7, &[1.0, 2.0, 2.0, 7.0]).unwrap();
        // fence 3.25 + 1.5 * 1.5 = 5.5
        assert_eq!(emit_boxplot_data(&[row]).lines().nth(1).unwrap(), "p,4,7,1,1.75,2,3.25,7,7");
    }
}

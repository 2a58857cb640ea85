//! Reference crossing table for the split linear potential.

const TABLE1: &str = include_str!("../data/table1.tsv");

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrintedRow {
    pub i: usize,
    pub j: usize,
    pub nu: f64,
    pub energy: f64,
}

/// Rows in printed order, i.e. by `i + j`, then `i`.
pub fn table1() -> Vec<PrintedRow> {
    TABLE1
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            PrintedRow {
                i: f[1].parse().expect("table1.tsv: i"),
                j: f[2].parse().expect("table1.tsv: j"),
                nu: f[3].parse().expect("table1.tsv: nu"),
                energy: f[4].parse().expect("table1.tsv: E"),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_are_consistent() {
        let rows = table1();
        assert_eq!(rows.len(), 30);
        let sums: Vec<usize> = rows.iter().map(|r| r.i + r.j).collect();
        assert!(sums.windows(2).all(|w| w[0] <= w[1]));
        assert!(rows.iter().all(|r| r.i <= r.j && r.i >= 1));
        assert!(rows.iter().filter(|r| r.i == r.j).all(|r| r.nu == 1.0));
    }
}

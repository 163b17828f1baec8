use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use super::{PairingContext, PairingError};
use crate::curve::Point;
use crate::quad::{QuadInt, ResidueRing};

/// The full table of reduced `T^_a` values on `E[conj(a)] x E/[a]E`, with
/// the outcome of each non-degeneracy check.
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub alpha: QuadInt,
    pub norm: i64,
    pub rows: Vec<Point>,
    pub columns: Vec<Point>,
    pub table: Vec<Vec<QuadInt>>,
    pub left_nondegenerate: bool,
    pub right_nondegenerate: bool,
    pub surjective: bool,
    pub exact_rows: usize,
    pub exact_columns: usize,
    pub failures: Vec<String>,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl PairingContext {
    /// Checks that `a` satisfies the standing hypotheses of the scan.
    pub fn check_scan_hypotheses(&self, alpha: QuadInt) -> Result<(), PairingError> {
        self.check_order(alpha)?;
        let n = alpha.norm();
        if n == 0 {
            return Err(PairingError::HypothesisViolated(
                "alpha must be nonzero".into(),
            ));
        }
        let q = self.field().modulus() as i64;
        if gcd(n, q) != 1 {
            return Err(PairingError::HypothesisViolated(format!(
                "N({alpha}) = {n} is not prime to q = {q}"
            )));
        }
        let disc = self.order().discriminant();
        if gcd(n, disc) != 1 {
            return Err(PairingError::HypothesisViolated(format!(
                "N({alpha}) = {n} is not prime to the discriminant {disc}"
            )));
        }
        if (q - 1) % n != 0 {
            return Err(PairingError::HypothesisViolated(format!(
                "N({alpha}) = {n} does not divide q - 1 = {}",
                q - 1
            )));
        }
        Ok(())
    }

    /// Tabulates `T^_a` over `E[conj(a)] x E/[a]E` and checks left and right
    /// non-degeneracy, plus surjectivity on rows and columns whose annihilator
    /// is exactly `conj(a)` or `a`.
    pub fn nondegeneracy_scan(&self, alpha: QuadInt) -> Result<ScanReport, PairingError> {
        self.check_scan_hypotheses(alpha)?;
        let cm = self.cm();
        let e = self.curve();
        let ab = alpha.conj();
        let rows = cm.kernel_of(ab)?;
        let columns = cm.coset_reps_mod(alpha)?;
        let image = cm.image_of(alpha)?;
        let mut coset_id: HashMap<Point, usize> = HashMap::new();
        for (k, &rep) in columns.iter().enumerate() {
            for &h in &image {
                coset_id.insert(e.add(rep, h), k);
            }
        }

        let mut table = Vec::with_capacity(rows.len());
        for &p in &rows {
            let mut line = Vec::with_capacity(columns.len());
            for &q in &columns {
                let v = self.t_hat(p, q, alpha)?;
                let r = v.reduced.ok_or_else(|| {
                    PairingError::HypothesisViolated(format!("no reduced form for {alpha}"))
                })?;
                line.push(r);
            }
            table.push(line);
        }

        let n = alpha.norm();
        let target = ResidueRing::new(alpha)?;
        let row_ring = ResidueRing::new(ab)?;
        let mut failures = Vec::new();

        let mut left = true;
        for (i, &p) in rows.iter().enumerate() {
            if !p.is_infinity() && table[i].iter().all(|r| target.is_zero(*r)) {
                left = false;
                failures.push(format!("row {p} pairs trivially with every column"));
            }
        }
        let mut right = true;
        for (j, &q) in columns.iter().enumerate() {
            if coset_id[&q] != coset_id[&Point::Infinity]
                && table.iter().all(|line| target.is_zero(line[j]))
            {
                right = false;
                failures.push(format!("column {q} pairs trivially with every row"));
            }
        }

        let mut surjective = true;
        let mut exact_rows = 0;
        for (i, &p) in rows.iter().enumerate() {
            let orbit: BTreeSet<Point> = row_ring
                .representatives()
                .into_iter()
                .map(|r| cm.act(r, p))
                .collect();
            if orbit.len() as i64 != n {
                continue;
            }
            exact_rows += 1;
            let values: BTreeSet<(i64, i64)> = table[i].iter().map(|r| r.coords()).collect();
            if values.len() as i64 != n {
                surjective = false;
                failures.push(format!("row {p} reaches {} of {n} values", values.len()));
            }
        }
        let mut exact_columns = 0;
        for (j, &q) in columns.iter().enumerate() {
            let orbit: BTreeSet<usize> = target
                .representatives()
                .into_iter()
                .map(|r| coset_id[&cm.act(r, q)])
                .collect();
            if orbit.len() as i64 != n {
                continue;
            }
            exact_columns += 1;
            let values: BTreeSet<(i64, i64)> = table.iter().map(|line| line[j].coords()).collect();
            if values.len() as i64 != n {
                surjective = false;
                failures.push(format!("column {q} reaches {} of {n} values", values.len()));
            }
        }

        Ok(ScanReport {
            alpha,
            norm: n,
            rows,
            columns,
            table,
            left_nondegenerate: left,
            right_nondegenerate: right,
            surjective,
            exact_rows,
            exact_columns,
            failures,
        })
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alpha = {}, N(alpha) = {}", self.alpha, self.norm)?;
        writeln!(
            f,
            "rows: E[conj(alpha)] ({} points), columns: E/[alpha]E ({} cosets)",
            self.rows.len(),
            self.columns.len()
        )?;
        let labels: Vec<String> = self.columns.iter().map(|q| q.to_string()).collect();
        let row_labels: Vec<String> = self.rows.iter().map(|p| p.to_string()).collect();
        let cells: Vec<Vec<String>> = self
            .table
            .iter()
            .map(|line| line.iter().map(|r| r.to_string()).collect())
            .collect();
        let lead = row_labels.iter().map(String::len).max().unwrap_or(1);
        let width = labels
            .iter()
            .map(String::len)
            .chain(cells.iter().flatten().map(String::len))
            .max()
            .unwrap_or(1);
        write!(f, "{:lead$}", "")?;
        for l in &labels {
            write!(f, "  {l:>width$}")?;
        }
        writeln!(f)?;
        for (label, line) in row_labels.iter().zip(&cells) {
            write!(f, "{label:>lead$}")?;
            for c in line {
                write!(f, "  {c:>width$}")?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "left non-degenerate: {}",
            yes_no(self.left_nondegenerate)
        )?;
        writeln!(
            f,
            "right non-degenerate: {}",
            yes_no(self.right_nondegenerate)
        )?;
        write!(
            f,
            "surjective: {} ({} exact rows, {} exact columns)",
            yes_no(self.surjective),
            self.exact_rows,
            self.exact_columns
        )?;
        for failure in &self.failures {
            write!(f, "\n  {failure}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CmCurve;
    use crate::field::PrimeField;

    #[test]
    fn gaussian_scan_is_perfect() {
        let cm = CmCurve::j1728(PrimeField::new(401).unwrap(), -1, 20).unwrap();
        let c = PairingContext::new(cm, 0).unwrap();
        for (x, y) in [(1, -2), (1, 2), (1, 0)] {
            let r = c.nondegeneracy_scan(c.order().elem(x, y)).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn ramified_norm_is_rejected() {
        let cm = CmCurve::j0(PrimeField::new(211).unwrap(), 8, 14).unwrap();
        let c = PairingContext::new(cm, 0).unwrap();
        let r = c.nondegeneracy_scan(c.order().elem(1, -1));
        assert!(matches!(r, Err(PairingError::HypothesisViolated(_))));
    }

    #[test]
    fn eisenstein_scan_is_perfect() {
        let cm = CmCurve::j0(PrimeField::new(211).unwrap(), 8, 14).unwrap();
        let c = PairingContext::new(cm, 0).unwrap();
        for (x, y) in [(3, 1), (2, -1)] {
            let r = c.nondegeneracy_scan(c.order().elem(x, y)).unwrap();
            assert!(r.passed(), "{r}");
            assert_eq!(r.rows.len() as i64, r.norm);
        }
        let r = c.nondegeneracy_scan(c.order().int(7));
        assert!(matches!(r, Err(PairingError::HypothesisViolated(_))));
    }
}

//! Replay statistics. One row per trace operation plus run aggregates,
//! rendered as a line-oriented text document that diffs cleanly; everything
//! except the timing fields is deterministic for a given trace and flags.

use std::fmt::Write as _;

#[derive(Clone, Debug)]
pub struct OpRow {
    pub op_index: usize,
    pub kind: char,
    pub flips: u32,
    pub recursion_depth: u32,
    pub max_out_degree_after: u32,
    pub elapsed_ns: u64,
    /// Exact arboricity after the op; recorded when the vertex count is
    /// within the exponential oracle's limit.
    pub alpha_exact: Option<u32>,
}

#[derive(Clone, Debug, Default)]
pub struct StatsReport {
    pub rows: Vec<OpRow>,
    pub max_flips: u32,
    pub max_out_degree: u32,
    pub bound: f64,
    pub bound_satisfied: bool,
    pub invariant_failures: Vec<String>,
}

impl StatsReport {
    pub fn p100_latency_ns(&self) -> u64 {
        self.rows.iter().map(|r| r.elapsed_ns).max().unwrap_or(0)
    }

    pub fn p99_latency_ns(&self) -> u64 {
        if self.rows.is_empty() {
            return 0;
        }
        let mut latencies: Vec<u64> = self.rows.iter().map(|r| r.elapsed_ns).collect();
        latencies.sort_unstable();
        let rank = (latencies.len() as f64 * 0.99).ceil() as usize;
        latencies[rank.clamp(1, latencies.len()) - 1]
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            write!(
                out,
                "op_index {} kind {} flips {} recursion_depth {} max_out_degree_after {} elapsed_ns {}",
                row.op_index, row.kind, row.flips, row.recursion_depth,
                row.max_out_degree_after, row.elapsed_ns
            )
            .expect("writing to a String");
            if let Some(alpha) = row.alpha_exact {
                write!(out, " alpha_exact {alpha}").expect("writing to a String");
            }
            out.push('\n');
        }
        writeln!(out, "ops {}", self.rows.len()).expect("writing to a String");
        writeln!(out, "max_flips {}", self.max_flips).expect("writing to a String");
        writeln!(out, "p100_latency_ns {}", self.p100_latency_ns()).expect("writing to a String");
        writeln!(out, "p99_latency_ns {}", self.p99_latency_ns()).expect("writing to a String");
        writeln!(out, "max_out_degree {}", self.max_out_degree).expect("writing to a String");
        writeln!(out, "bound {}", self.bound).expect("writing to a String");
        writeln!(out, "bound_satisfied {}", self.bound_satisfied).expect("writing to a String");
        if self.invariant_failures.is_empty() {
            writeln!(out, "invariant_failures none").expect("writing to a String");
        } else {
            for failure in &self.invariant_failures {
                writeln!(out, "invariant_failure {failure}").expect("writing to a String");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentiles_and_rendering() {
        let mut report = StatsReport {
            bound: 6.0,
            bound_satisfied: true,
            ..StatsReport::default()
        };
        for i in 0..100u64 {
            report.rows.push(OpRow {
                op_index: i as usize,
                kind: '+',
                flips: 0,
                recursion_depth: 1,
                max_out_degree_after: 1,
                elapsed_ns: i + 1,
                alpha_exact: Some(1),
            });
        }
        report.max_flips = 0;
        report.max_out_degree = 1;
        assert_eq!(report.p100_latency_ns(), 100);
        assert_eq!(report.p99_latency_ns(), 99);
        let doc = report.render();
        assert!(doc.contains("op_index 0 kind + flips 0 recursion_depth 1 max_out_degree_after 1 elapsed_ns 1 alpha_exact 1"));
        assert!(doc.contains("bound 6\n"));
        assert!(doc.contains("bound_satisfied true"));
        assert!(doc.contains("invariant_failures none"));
    }

    #[test]
    fn empty_report_renders() {
        let doc = StatsReport::default().render();
        assert!(doc.contains("ops 0"));
        assert!(doc.contains("p99_latency_ns 0"));
    }
}

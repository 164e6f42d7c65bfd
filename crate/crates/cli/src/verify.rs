//! Verification driver: exhaustive small-instance search plus seeded
//! randomized differential runs of both variants against the reference
//! replicas and the whole-state validators.

use arbor_core::oracle::{adversarial_search, NaiveReplica, SpectrumReplica};
use arbor_core::{OrientedGraph, SpectrumConfig, SpectrumGraph, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    /// Exhaustive search covers every trace on up to this many vertices.
    pub max_n: usize,
    /// ... of up to this many operations.
    pub max_ops: usize,
    /// Base seed for the randomized runs.
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_n: 4, max_ops: 8, seed: 0 }
    }
}

#[derive(Debug, Default)]
pub struct VerifyReport {
    pub lines: Vec<String>,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn clean(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn verify(config: &VerifyConfig) -> Result<VerifyReport, String> {
    let mut report = VerifyReport::default();

    let outcome =
        adversarial_search(config.max_n, config.max_ops).map_err(|e| e.to_string())?;
    report.lines.push(format!(
        "exhaustive: n <= {}, ops <= {}, {} operations explored",
        config.max_n, config.max_ops, outcome.operations
    ));
    if let Some(w) = &outcome.best_naive {
        report.lines.push(format!("exhaustive: deepest naive witness: {w:?}"));
    }
    if let Some(w) = &outcome.best_spectrum {
        report.lines.push(format!("exhaustive: deepest spectrum witness: {w:?}"));
    }
    if !outcome.clean() {
        for violation in &outcome.violations {
            report.failures.push(format!("exhaustive: {violation}"));
        }
        if outcome.suppressed_violations > 0 {
            report
                .failures
                .push(format!("exhaustive: {} more suppressed", outcome.suppressed_violations));
        }
    }

    for (index, &(n, ops, alpha, beta)) in
        [(16usize, 3000usize, 2u32, 2.0f64), (48, 3000, 1, 2.0), (10, 2000, 1, 1.5)]
            .iter()
            .enumerate()
    {
        let seed = config.seed.wrapping_add(index as u64);
        match differential_run(n, ops, alpha, beta, seed) {
            Ok(()) => report.lines.push(format!(
                "differential: n = {n}, {ops} ops, alpha = {alpha}, beta = {beta}, seed = {seed}: ok"
            )),
            Err(detail) => report.failures.push(format!(
                "differential: n = {n}, seed = {seed}: {detail}"
            )),
        }
    }

    Ok(report)
}

/// Random trace on four structures at once; any disagreement or validator
/// failure is a counterexample.
fn differential_run(n: usize, ops: usize, alpha: u32, beta: f64, seed: u64) -> Result<(), String> {
    let config = SpectrumConfig::new(alpha, beta).map_err(|e| e.to_string())?;
    let mut naive = OrientedGraph::new(n).map_err(|e| e.to_string())?;
    let mut spectrum = SpectrumGraph::new(n, config).map_err(|e| e.to_string())?;
    let mut naive_replica = NaiveReplica::new(n);
    let mut spectrum_replica = SpectrumReplica::new(n, config.gamma());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present: Vec<(Vertex, Vertex)> = Vec::new();
    let mut run_max = 0u32;

    let max_edges = n * (n - 1) / 2;
    for step in 0..ops {
        let inserting =
            present.len() < max_edges && (present.is_empty() || rng.gen_bool(0.6));
        let (ns, ss, nr, sr) = if inserting {
            let (u, v) = loop {
                let u = rng.gen_range(0..n as Vertex);
                let v = rng.gen_range(0..n as Vertex);
                if u != v && !naive.contains_edge(u, v) {
                    break (u, v);
                }
            };
            present.push((u, v));
            (
                naive.insert_edge(u, v).map_err(|e| e.to_string())?,
                spectrum.insert_edge(u, v).map_err(|e| e.to_string())?,
                naive_replica.0.insert(u, v),
                spectrum_replica.0.insert(u, v),
            )
        } else {
            let (u, v) = present.swap_remove(rng.gen_range(0..present.len()));
            (
                naive.delete_edge(u, v).map_err(|e| e.to_string())?,
                spectrum.delete_edge(u, v).map_err(|e| e.to_string())?,
                naive_replica.0.delete(u, v),
                spectrum_replica.0.delete(u, v),
            )
        };

        if (ns.flips, ns.recursion_depth) != (nr.flips, nr.recursion_depth) {
            return Err(format!("step {step}: naive flips diverge from the replica"));
        }
        if (ss.flips, ss.recursion_depth) != (sr.flips, sr.recursion_depth) {
            return Err(format!("step {step}: spectrum flips diverge from the replica"));
        }
        run_max = run_max.max(naive.max_out_degree()).max(spectrum.max_out_degree());
        if ns.flips > run_max + 1 || ss.flips > run_max + 1 {
            return Err(format!("step {step}: flip bound exceeded"));
        }

        if step % 16 == 0 || step + 1 == ops {
            for u in 0..n as Vertex {
                let naive_out: Vec<Vertex> = naive.view().out_neighbors(u).collect();
                if naive_out != naive_replica.0.out_list(u) {
                    return Err(format!("step {step}: naive out-list of {u} diverged"));
                }
                let spectrum_out: Vec<Vertex> = spectrum.view().out_neighbors(u).collect();
                if spectrum_out != spectrum_replica.0.out_list(u) {
                    return Err(format!("step {step}: spectrum out-list of {u} diverged"));
                }
            }
        }
        if step % 32 == 0 || step + 1 == ops {
            let report = naive.validate_invariant2();
            if !report.passed() {
                return Err(format!("step {step}: validate_invariant2: {}", report.issues[0]));
            }
            let lists = spectrum.validate_lists();
            if !lists.passed() {
                return Err(format!("step {step}: validate_lists: {}", lists.issues[0]));
            }
            let partition = spectrum.validate_invariant3();
            if !partition.passed() {
                return Err(format!("step {step}: validate_invariant3: {}", partition.issues[0]));
            }
        }
    }
    Ok(())
}

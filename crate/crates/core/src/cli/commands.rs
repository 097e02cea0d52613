use std::fs;
use std::path::Path;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::output::{json_document, jsonl_document, ReportHeader};
use super::{Format, RunConfig};
use crate::algebra::{Frame, GroupElement};
use crate::biquotient::{BiquotientAction, PlaneReport};
use crate::catalog::{
    all_entries, enumerate_bazaikin, group_of, smallest_parameter, enumerate_eschenburg, scan_sp2_two_tori, scan_su3_two_tori, verify_entry, write_csv, CsvRow,
    EntryReport, ScanReport, Verification,
};
use crate::detectors::fixtures::{fixture, fixtures, FixtureConfig, FixtureReport};
use crate::detectors::{check_n1, check_n2, numeric_flat_search, FlatCertificate, SearchBudget, Subspace};
use crate::error::{BiqError, Result};
use crate::freeness::{is_free_bruteforce, is_free_exact, FreenessMode, FreenessVerdict, TorusActionWeights, WeightsFile};
use crate::metric::{MetricOperator, MetricSpec};

/// Bytes of the report and the process exit code.
pub struct Outcome {
    pub bytes: Vec<u8>,
    pub code: i32,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| BiqError::InvalidInput(format!("cannot read {what} file {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        BiqError::InvalidInput(format!("{what} file {}: line {}, column {}: {e}", path.display(), e.line(), e.column()))
    })
}

pub fn load_weights(path: &Path) -> Result<TorusActionWeights> {
    let f: WeightsFile = read_json(path, "weights")?;
    TorusActionWeights::from_file(f)
}

fn csv_line(fields: &[String]) -> String {
    fields.join(",") + "\n"
}

#[derive(Serialize)]
struct OracleReport {
    max_order: usize,
    free: bool,
    agrees: bool,
}

#[derive(Serialize)]
struct FreeReport {
    weights: WeightsFile,
    verdict: FreenessVerdict,
    oracle: Option<OracleReport>,
}

pub fn cmd_free(cfg: &RunConfig, input: &Path, mode: FreenessMode, oracle: Option<usize>) -> Result<Outcome> {
    let w = load_weights(input)?;
    let verdict = is_free_exact(&w, mode)?;
    let oracle = match oracle {
        Some(0) => return Err(BiqError::InvalidInput("oracle order must be at least 1".into())),
        Some(m) => {
            let o = is_free_bruteforce(&w, m, mode);
            // The oracle is one-sided: it can only refute freeness.
            let agrees = o.free || !verdict.free;
            Some(OracleReport {
                max_order: m,
                free: o.free,
                agrees,
            })
        }
        None => None,
    };
    let code = match &oracle {
        Some(o) if !o.agrees => 3,
        _ if verdict.free => 0,
        _ => 1,
    };
    let header = ReportHeader::new("free", cfg.seed);
    let report = FreeReport {
        weights: w.to_file(),
        verdict,
        oracle,
    };
    let bytes = match cfg.format {
        Format::Json => json_document(&header, &report)?,
        Format::Csv => {
            let mut s = header.csv_comment();
            s += "group,n,k,mode,free,method,witness_t,oracle_free\n";
            let v = &report.verdict;
            s += &csv_line(&[
                serde_json::to_value(w.group.family)?.as_str().unwrap_or_default().to_string(),
                w.group.n.to_string(),
                w.k.to_string(),
                serde_json::to_value(v.mode)?.as_str().unwrap_or_default().to_string(),
                v.free.to_string(),
                v.method.clone(),
                v.witness.as_ref().map(|x| x.t.join(" ")).unwrap_or_default(),
                report.oracle.as_ref().map(|o| o.free.to_string()).unwrap_or_default(),
            ]);
            s.into_bytes()
        }
    };
    Ok(Outcome { bytes, code })
}

#[derive(Serialize)]
struct PointReport {
    index: usize,
    min_sec_quotient: f64,
    best: PlaneReport,
    certificates: Vec<PlaneReport>,
    evaluations: usize,
}

#[derive(Serialize)]
struct ScanSummary {
    points: usize,
    global_min_sec_quotient: f64,
    flat_certificates: usize,
    rejected_certificates: usize,
}

#[derive(Serialize)]
struct ScanOutput {
    weights: WeightsFile,
    verdict: FreenessVerdict,
    metric: String,
    points: Vec<PointReport>,
    summary: ScanSummary,
}

/// N1 on the Cartan subalgebra and N2 on pairs of commuting root spaces.
fn detector_planes(
    act: &BiquotientAction,
    g: &GroupElement,
    p: &MetricOperator,
    cfg: &RunConfig,
    rng: &mut ChaCha8Rng,
) -> (Vec<PlaneReport>, usize) {
    let fr = act.frame();
    let mut found = Vec::new();
    let mut rejected = 0;
    let mut accept = |c: Option<&FlatCertificate>| {
        if let Some(c) = c {
            match c.evaluate(act, g, p) {
                Ok(r) if c.max_residual() < cfg.structural_tol && r.sec_quotient.abs() < cfg.flat_tol => found.push(r),
                _ => rejected += 1,
            }
        }
    };
    accept(check_n1(p, &Subspace::cartan(fr), act, g).certificate());
    let roots: Vec<Vec<i64>> = fr.decomposition.roots.iter().map(|r| r.functional.clone()).collect();
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            let (Some(w1), Some(w2)) = (Subspace::root_space(fr, a), Subspace::root_space(fr, b)) else {
                continue;
            };
            if w1.bracket_residual(fr, &w2) > cfg.structural_tol {
                continue;
            }
            accept(check_n2(p, &w1, &w2, act, g, rng).certificate());
            accept(check_n2(p, &w2, &w1, act, g, rng).certificate());
        }
    }
    (found, rejected)
}

pub fn cmd_scan(cfg: &RunConfig, action: &Path, metric: Option<&Path>, mode: FreenessMode) -> Result<Outcome> {
    let w = load_weights(action)?;
    let verdict = is_free_exact(&w, mode)?;
    let header = ReportHeader::new("scan", cfg.seed);
    if !verdict.free {
        #[derive(Serialize)]
        struct Refusal<'a> {
            refused: &'static str,
            verdict: &'a FreenessVerdict,
        }
        let r = Refusal {
            refused: "the action is not free",
            verdict: &verdict,
        };
        return Ok(Outcome {
            bytes: json_document(&header, &r)?,
            code: 1,
        });
    }
    let frame = Arc::new(Frame::new(w.group)?);
    let (p, metric_label) = match metric {
        Some(path) => {
            let spec: MetricSpec = read_json(path, "metric")?;
            (MetricOperator::from_spec(frame.clone(), &spec)?, path.display().to_string())
        }
        None => (MetricOperator::identity(frame.clone()), "identity".to_string()),
    };
    let act = BiquotientAction::from_torus(frame.clone(), w.clone(), mode)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let budget = SearchBudget {
        samples: cfg.planes,
        starts: cfg.restarts,
        halvings: 24,
    };
    let mut points = Vec::new();
    let mut rejected = 0;
    for index in 0..cfg.points {
        let g = if index == 0 {
            GroupElement::identity(w.group)
        } else {
            w.group.random_group(&mut rng)
        };
        let search = numeric_flat_search(&act, &g, &p, budget, &mut rng)?;
        let (certificates, rej) = detector_planes(&act, &g, &p, cfg, &mut rng);
        rejected += rej;
        let min = certificates
            .iter()
            .map(|c| c.sec_quotient)
            .fold(search.best.sec_quotient, f64::min);
        points.push(PointReport {
            index,
            min_sec_quotient: min,
            best: search.best,
            certificates,
            evaluations: search.evaluations,
        });
    }
    let summary = ScanSummary {
        points: points.len(),
        global_min_sec_quotient: points.iter().map(|p| p.min_sec_quotient).fold(f64::INFINITY, f64::min),
        flat_certificates: points.iter().map(|p| p.certificates.len()).sum(),
        rejected_certificates: rejected,
    };
    let out = ScanOutput {
        weights: w.to_file(),
        verdict,
        metric: metric_label,
        points,
        summary,
    };
    let bytes = match cfg.format {
        Format::Json => json_document(&header, &out)?,
        Format::Csv => {
            let mut s = header.csv_comment();
            s += "point,min_sec_quotient,search_min,certificates,criteria\n";
            for pr in &out.points {
                let crit: Vec<String> = pr.certificates.iter().map(|c| format!("{:?}", c.certificate)).collect();
                s += &csv_line(&[
                    pr.index.to_string(),
                    format!("{:e}", pr.min_sec_quotient),
                    format!("{:e}", pr.best.sec_quotient),
                    pr.certificates.len().to_string(),
                    crit.join(" "),
                ]);
            }
            s.into_bytes()
        }
    };
    Ok(Outcome { bytes, code: 0 })
}

pub fn cmd_fixtures(cfg: &RunConfig, name: &str) -> Result<Outcome> {
    let list = if name == "all" { fixtures() } else { vec![fixture(name)?] };
    let fc = FixtureConfig {
        seed: cfg.seed,
        search: SearchBudget {
            samples: cfg.planes,
            starts: cfg.restarts,
            ..SearchBudget::default()
        },
    };
    let reports: Vec<FixtureReport> = list.iter().map(|f| f.run(&fc)).collect::<Result<_>>()?;
    let code = if reports.iter().all(|r| r.passed) { 0 } else { 1 };
    let header = ReportHeader::new(&format!("fixtures {name}"), cfg.seed);
    let bytes = match cfg.format {
        Format::Json => json_document(&header, &reports)?,
        Format::Csv => {
            let mut s = header.csv_comment();
            s += "fixture,check,passed,trials,worst,bound\n";
            for r in &reports {
                for c in &r.checks {
                    s += &csv_line(&[
                        r.fixture.clone(),
                        format!("\"{}\"", c.name.replace('"', "'")),
                        c.passed.to_string(),
                        c.trials.to_string(),
                        format!("{:e}", c.worst),
                        format!("{:e}", c.bound),
                    ]);
                }
            }
            s.into_bytes()
        }
    };
    Ok(Outcome { bytes, code })
}

fn records<T: Serialize + CsvRow>(cfg: &RunConfig, command: &str, recs: &[T]) -> Result<Vec<u8>> {
    let header = ReportHeader::new(command, cfg.seed);
    Ok(match cfg.format {
        Format::Json => jsonl_document(&header, recs)?,
        Format::Csv => {
            let mut v = header.csv_comment().into_bytes();
            write_csv(recs, &mut v)?;
            v
        }
    })
}

impl CsvRow for EntryReport {
    fn header() -> &'static str {
        "row,parameter,group,verified,dim_g,dim_u,rank_g,rank_u,expected_quotient_dim,torus,torus_free,passed"
    }
    fn row(&self) -> String {
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.row,
            self.parameter,
            self.group,
            serde_json::to_value(self.verified).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            self.dim_g,
            opt(self.dim_u),
            self.rank_g,
            opt(self.rank_u),
            self.expected_quotient_dim,
            self.torus.replace(',', ";"),
            self.torus_free,
            self.passed
        )
    }
}

impl CsvRow for ScanReport {
    fn header() -> &'static str {
        "group,bound,columns,pairs,maximal_rank,free,free_two_sided,equivalent,distinct_lattices,inequivalent"
    }
    fn row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.group,
            self.bound,
            self.columns,
            self.pairs,
            self.maximal_rank,
            self.free,
            self.free_two_sided,
            self.equivalent,
            self.distinct_lattices,
            self.inequivalent.len()
        )
    }
}

/// Every legal parameter whose group has rank at most `rank_cap` for fully
/// verified rows (at least the smallest one), the fixed groups once for
/// torus-only rows.
pub fn verify_tables(rank_cap: usize) -> Result<Vec<EntryReport>> {
    let mut out = Vec::new();
    for e in all_entries() {
        match e.verified {
            Verification::Full => {
                let first = smallest_parameter(e.row);
                out.push(verify_entry(&e, Some(first))?);
                let mut n = first + 1;
                while group_of(e.row, n).is_some_and(|g| g.rank() <= rank_cap) {
                    out.push(verify_entry(&e, Some(n))?);
                    n += 1;
                }
            }
            Verification::TorusOnly => out.push(verify_entry(&e, None)?),
            Verification::Recorded => {}
        }
    }
    Ok(out)
}

pub enum CatalogCommand {
    Eschenburg(u32),
    Bazaikin(u32),
    VerifyTables(usize),
    TwoTori { sp2: bool, bound: i64 },
}

pub fn cmd_catalog(cfg: &RunConfig, cmd: CatalogCommand) -> Result<Outcome> {
    match cmd {
        CatalogCommand::Eschenburg(b) => {
            if b == 0 {
                return Err(BiqError::InvalidInput("bound must be at least 1".into()));
            }
            Ok(Outcome {
                bytes: records(cfg, &format!("catalog enumerate-eschenburg {b}"), &enumerate_eschenburg(b))?,
                code: 0,
            })
        }
        CatalogCommand::Bazaikin(b) => {
            if b == 0 {
                return Err(BiqError::InvalidInput("bound must be at least 1".into()));
            }
            Ok(Outcome {
                bytes: records(cfg, &format!("catalog enumerate-bazaikin {b}"), &enumerate_bazaikin(b))?,
                code: 0,
            })
        }
        CatalogCommand::VerifyTables(cap) => {
            let reps = verify_tables(cap)?;
            let code = if reps.iter().all(|r| r.passed) { 0 } else { 1 };
            Ok(Outcome {
                bytes: records(cfg, &format!("catalog verify-tables {cap}"), &reps)?,
                code,
            })
        }
        CatalogCommand::TwoTori { sp2, bound } => {
            let r = if sp2 { scan_sp2_two_tori(bound)? } else { scan_su3_two_tori(bound)? };
            let code = if r.passed() { 0 } else { 1 };
            Ok(Outcome {
                bytes: records(cfg, &format!("catalog two-tori {} {bound}", r.group), std::slice::from_ref(&r))?,
                code,
            })
        }
    }
}

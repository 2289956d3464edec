//! Property suites over the bundled corpus.

use std::fs::{self, File};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::ValueEnum;
use num_bigint::BigInt;
use periodica::equivariant::{poly_p, qdim_m};
use periodica::{
    check_decomposition, check_skein, ingest_ranks, jones_kauffman, kh_ranks, murasugi_verify, Budget, LaurentPoly,
    LinkDiagram, Outcome, PeriodicTangleCode, PlanarDiagram,
};
use serde::Serialize;

use crate::{Format, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Jones,
    ClosedForms,
    Decomposition,
    Skein,
    Murasugi,
    Euler,
}

impl Suite {
    const ALL: [Suite; 6] = [
        Suite::Jones,
        Suite::ClosedForms,
        Suite::Decomposition,
        Suite::Skein,
        Suite::Murasugi,
        Suite::Euler,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::Jones => "jones",
            Suite::ClosedForms => "closed-forms",
            Suite::Decomposition => "decomposition",
            Suite::Skein => "skein",
            Suite::Murasugi => "murasugi",
            Suite::Euler => "euler",
        }
    }
}

#[derive(Debug, Serialize)]
struct Case {
    suite: Suite,
    name: String,
    passed: bool,
    detail: Option<String>,
    millis: u128,
}

type CaseResult = Result<(), String>;

struct Runner<'a> {
    data: &'a Path,
    budget: &'a Budget,
    cases: Vec<Case>,
}

impl Runner<'_> {
    fn case(&mut self, suite: Suite, name: impl Into<String>, f: impl FnOnce() -> CaseResult) {
        let start = Instant::now();
        let result = f();
        self.cases.push(Case {
            suite,
            name: name.into(),
            passed: result.is_ok(),
            detail: result.err(),
            millis: start.elapsed().as_millis(),
        });
    }

    fn files(&self, ext: &str) -> Vec<String> {
        let mut out: Vec<String> = fs::read_dir(self.data)
            .map(|rd| {
                rd.filter_map(|e| e.ok()?.file_name().into_string().ok())
                    .filter(|n| n.ends_with(ext))
                    .collect()
            })
            .unwrap_or_default();
        out.sort();
        out
    }

    fn read(&self, name: &str) -> Result<String, String> {
        fs::read_to_string(self.data.join(name)).map_err(|e| format!("{name}: {e}"))
    }

    fn pd(&self, name: &str) -> Result<PlanarDiagram, String> {
        PlanarDiagram::parse(&self.read(name)?).map_err(|e| format!("{name}: {e}"))
    }

    fn ptc(&self, name: &str) -> Result<PeriodicTangleCode, String> {
        PeriodicTangleCode::parse(&self.read(name)?).map_err(|e| format!("{name}: {e}"))
    }

    fn jones(&mut self) {
        // hand expansions of the Kauffman bracket, unreduced normalisation
        let oracles = [
            ("unknot.pd", "q + q^-1"),
            ("hopf.pd", "1 + q^2 + q^4 + q^6"),
            ("trefoil.pd", "q + q^3 + q^5 - q^9"),
            ("figure8.pd", "q^-5 + q^5"),
        ];
        let budget = *self.budget;
        for (file, expected) in oracles {
            let d = self.pd(file);
            self.case(Suite::Jones, file, || {
                let got = jones_kauffman(&d?, &budget).map_err(|e| e.to_string())?;
                let want: LaurentPoly = expected.parse().expect("oracle parses");
                if got == want {
                    Ok(())
                } else {
                    Err(format!("got {got}, expected {want}"))
                }
            });
        }
    }

    fn closed_forms(&mut self) {
        for (p, n) in [(3u64, 1u32), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)] {
            self.case(Suite::ClosedForms, format!("P_{n} p={p} palindromic"), || {
                let f = poly_p(p, n).map_err(|e| e.to_string())?;
                if f.mirror() != f {
                    return Err(format!("{f} is not palindromic"));
                }
                if f.terms().any(|(_, c)| c <= &BigInt::from(0)) {
                    return Err(format!("{f} has a non-positive coefficient"));
                }
                Ok(())
            });
        }
        for p in [3u64, 5] {
            for n in 1..=2u32 {
                self.case(Suite::ClosedForms, format!("qdim sum p={p} n={n}"), || {
                    for k in 0..=2usize {
                        for f in 0..=2usize {
                            let mut total = LaurentPoly::zero();
                            for s in 0..=n {
                                let m = qdim_m(p, n, s, k, f).map_err(|e| e.to_string())?;
                                total += &m.scale(&BigInt::from(p.pow(s)));
                            }
                            let want = LaurentPoly::unknot().pow((k as u64 * p.pow(n) + f as u64) as u32);
                            if total != want {
                                return Err(format!("k={k} f={f}: {total} != {want}"));
                            }
                        }
                    }
                    Ok(())
                });
            }
        }
    }

    fn decomposition(&mut self) {
        let budget = *self.budget;
        for file in self.files(".ptc") {
            let code = self.ptc(&file);
            self.case(Suite::Decomposition, &file, || {
                let report = check_decomposition(&code?, &budget).map_err(|e| e.to_string())?;
                if report.passed {
                    Ok(())
                } else {
                    Err(format!("sum p^s DJ = {} but J = {}", report.weighted_sum, report.jones))
                }
            });
        }
    }

    fn skein(&mut self) {
        let budget = *self.budget;
        for file in self.files(".ptc") {
            let code = match self.ptc(&file) {
                Ok(code) => code,
                Err(e) => {
                    self.case(Suite::Skein, &file, || Err(e));
                    continue;
                }
            };
            for c in 0..code.tangle().num_crossings() {
                self.case(Suite::Skein, format!("{file} crossing {c}"), || {
                    let report = check_skein(&code, c, &budget).map_err(|e| e.to_string())?;
                    if !report.identity_holds {
                        return Err("DJ_{n,0} identity fails".into());
                    }
                    match report.congruences.iter().find(|g| !g.holds) {
                        Some(g) => Err(format!("s = {}: {} not divisible", g.s, g.difference)),
                        None => Ok(()),
                    }
                });
            }
        }
    }

    fn murasugi(&mut self) {
        let budget = *self.budget;
        for file in self.files(".ptc") {
            let code = match self.ptc(&file) {
                Ok(code) => code,
                Err(e) => {
                    self.case(Suite::Murasugi, &file, || Err(e));
                    continue;
                }
            };
            // the congruence is stated for knots
            let knot = match code.quotient(0) {
                Ok(full) => full.skeleton().num_components() == 1,
                Err(_) => true,
            };
            if !knot {
                continue;
            }
            self.case(Suite::Murasugi, &file, || {
                let v = murasugi_verify(&code, &budget).map_err(|e| e.to_string())?;
                match v.result {
                    Outcome::NoObstruction => Ok(()),
                    Outcome::Obstructed => Err(format!(
                        "remainder {}",
                        v.witness_poly.map(|w| w.to_string()).unwrap_or_default()
                    )),
                }
            });
        }
    }

    fn euler(&mut self) {
        let budget = *self.budget;
        for file in self.files(".pd") {
            let d = self.pd(&file);
            self.case(Suite::Euler, &file, || {
                let d = d?;
                let j = jones_kauffman(&d, &budget).map_err(|e| e.to_string())?;
                let kh = kh_ranks(&d, &budget).map_err(|e| e.to_string())?;
                kh.check_euler(&j).map_err(|e| e.to_string())
            });
        }
        for file in self.files("_ranks.csv") {
            let stem = file.trim_end_matches("_ranks.csv");
            let d = self.pd(&format!("{stem}.pd"));
            let path = self.data.join(&file);
            self.case(Suite::Euler, &file, || {
                let j = jones_kauffman(&d?, &budget).map_err(|e| e.to_string())?;
                let f = File::open(&path).map_err(|e| e.to_string())?;
                ingest_ranks(f, Some(&j)).map(|_| ()).map_err(|e| e.to_string())
            });
        }
    }
}

fn default_data() -> PathBuf {
    let local = PathBuf::from("data");
    if local.is_dir() {
        return local;
    }
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn run(only: Option<Suite>, data: Option<PathBuf>, fmt: Format, budget: &Budget) -> anyhow::Result<Status> {
    let data = data.unwrap_or_else(default_data);
    if !data.is_dir() {
        anyhow::bail!(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("corpus directory {} not found", data.display())
        ));
    }
    let mut runner = Runner {
        data: &data,
        budget,
        cases: Vec::new(),
    };
    let suites: Vec<Suite> = match only {
        Some(s) => vec![s],
        None => Suite::ALL.to_vec(),
    };
    for suite in suites {
        match suite {
            Suite::Jones => runner.jones(),
            Suite::ClosedForms => runner.closed_forms(),
            Suite::Decomposition => runner.decomposition(),
            Suite::Skein => runner.skein(),
            Suite::Murasugi => runner.murasugi(),
            Suite::Euler => runner.euler(),
        }
    }
    let cases = runner.cases;
    let failed = cases.iter().filter(|c| !c.passed).count();
    match fmt {
        Format::Json => println!("{}", serde_json::to_string_pretty(&cases)?),
        Format::Text => {
            for c in &cases {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                match &c.detail {
                    None => println!("{tag} {}/{} ({} ms)", c.suite.name(), c.name, c.millis),
                    Some(d) => println!("{tag} {}/{}: {d}", c.suite.name(), c.name),
                }
            }
            println!(
                "{}: {} passed, {failed} failed",
                if failed == 0 { "PASS" } else { "FAIL" },
                cases.len() - failed
            );
        }
    }
    Ok(if failed == 0 && !cases.is_empty() {
        Status::Ok
    } else {
        Status::PropertyFailed
    })
}

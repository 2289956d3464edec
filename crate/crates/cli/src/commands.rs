use std::fs::File;
use std::path::{Path, PathBuf};

use anyhow::Context;
use periodica::criteria::murasugi_alpha;
use periodica::equivariant::totient;
use periodica::khovanov::Provenance;
use periodica::{
    check_decomposition, ingest_ranks, jones_kauffman, kh_ranks, murasugi_verify, przytycki_check,
    przytycki_variant_check, strengthened_check_at, strengthened_level, Budget, DiffJonesVector, Error,
    IdealChain, LaurentPoly, Outcome, Verdict,
};
use serde::Serialize;

use crate::input::{load_code, Input};
use crate::{Format, Status};

fn emit<T: Serialize>(fmt: Format, report: &T, text: impl FnOnce() -> String) {
    match fmt {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).expect("reports serialize")),
        Format::Text => print!("{}", text()),
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Serialize)]
struct JonesReport {
    input: PathBuf,
    jones: LaurentPoly,
}

pub fn jones(path: &Path, fmt: Format, budget: &Budget) -> anyhow::Result<Status> {
    let input = Input::load(path)?;
    let jones = jones_kauffman(input.skeleton(), budget)?;
    let report = JonesReport { input: path.into(), jones };
    emit(fmt, &report, || format!("{}\n", report.jones));
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct KhReport {
    input: PathBuf,
    /// `[i, j, rank]`
    ranks: Vec<(i64, i64, u64)>,
    max_rank: u64,
    euler_characteristic: LaurentPoly,
}

pub fn kh(path: &Path, fmt: Format, budget: &Budget) -> anyhow::Result<Status> {
    let input = Input::load(path)?;
    let table = kh_ranks(input.skeleton(), budget)?;
    let report = KhReport {
        input: path.into(),
        ranks: table.entries().collect(),
        max_rank: table.max_rank(),
        euler_characteristic: table.euler_characteristic(),
    };
    emit(fmt, &report, || table.to_csv());
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct DjReport {
    input: PathBuf,
    p: u64,
    n: u32,
    /// `dj[s] = DJ_{n,s}`
    dj: Vec<LaurentPoly>,
    /// `equivariant[s] = J_{p^n,p^s}`
    equivariant: Vec<LaurentPoly>,
    jones: LaurentPoly,
    decomposition: bool,
}

pub fn dj(path: &Path, fmt: Format, budget: &Budget) -> anyhow::Result<Status> {
    let code = load_code(path, "dj")?;
    let check = check_decomposition(&code, budget)?;
    let report = DjReport {
        input: path.into(),
        p: code.p(),
        n: code.n(),
        equivariant: (0..=code.n()).map(|s| check.dj.equiv_jones(s)).collect(),
        dj: check.dj.dj.clone(),
        jones: check.jones.clone(),
        decomposition: check.passed,
    };
    emit(fmt, &report, || {
        let mut out = format!("p = {}, n = {}\n", report.p, report.n);
        for (s, d) in report.dj.iter().enumerate() {
            out += &format!("DJ[{s}] = {d}\n");
        }
        for (s, j) in report.equivariant.iter().enumerate() {
            out += &format!("J[{}, {}] = {j}\n", code.period(), report.p.pow(s as u32));
        }
        out += &format!("jones = {}\n", report.jones);
        out += &format!("decomposition: {}\n", pass(report.decomposition));
        out
    });
    Ok(if check.passed { Status::Ok } else { Status::PropertyFailed })
}

#[derive(Serialize)]
struct EquivariantEntry {
    s: u32,
    period: u64,
    subgroup: u64,
    jones: LaurentPoly,
}

pub fn equivariant(path: &Path, s: Option<u32>, fmt: Format, budget: &Budget) -> anyhow::Result<Status> {
    let code = load_code(path, "equivariant")?;
    if let Some(s) = s {
        if s > code.n() {
            return Err(Error::Malformed(format!("s = {s} exceeds n = {}", code.n())).into());
        }
    }
    let vector = DiffJonesVector::compute(&code, budget)?;
    let levels: Vec<u32> = match s {
        Some(s) => vec![s],
        None => (0..=code.n()).collect(),
    };
    let report: Vec<EquivariantEntry> = levels
        .into_iter()
        .map(|s| EquivariantEntry {
            s,
            period: code.period(),
            subgroup: code.p().pow(s),
            jones: vector.equiv_jones(s),
        })
        .collect();
    emit(fmt, &report, || {
        report
            .iter()
            .map(|e| format!("J[{}, {}] = {}\n", e.period, e.subgroup, e.jones))
            .collect()
    });
    Ok(Status::Ok)
}

pub struct CheckArgs {
    pub p: Option<u64>,
    pub n: Option<u32>,
    pub s: Option<u32>,
    pub ranks: Option<PathBuf>,
}

#[derive(Serialize)]
struct CheckedIdeal {
    #[serde(flatten)]
    verdict: Verdict,
    ideal: String,
}

#[derive(Serialize)]
struct CheckReport {
    input: PathBuf,
    p: u64,
    n: u32,
    jones: LaurentPoly,
    max_rank: u64,
    rank_source: Provenance,
    verdicts: Vec<CheckedIdeal>,
    /// Reason the strengthened test was not run, if any.
    strengthened_skipped: Option<String>,
    obstructed: bool,
    summary: String,
}

pub fn check(path: &Path, args: CheckArgs, fmt: Format, budget: &Budget) -> anyhow::Result<Status> {
    let input = Input::load(path)?;
    let p = args.p.or(input.code().map(|c| c.p())).ok_or_else(|| {
        Error::Malformed("--p is required unless the input is a periodic tangle code".into())
    })?;
    let n = args.n.or(input.code().map(|c| c.n())).unwrap_or(1);
    if n == 0 {
        return Err(Error::Malformed("--n must be at least 1".into()).into());
    }
    let jones = jones_kauffman(input.skeleton(), budget)?;
    let ranks = match &args.ranks {
        Some(csv) => {
            let file = File::open(csv).with_context(|| format!("cannot read {}", csv.display()))?;
            ingest_ranks(file, Some(&jones)).with_context(|| format!("rank table {}", csv.display()))?
        }
        None => kh_ranks(input.skeleton(), budget)?,
    };

    let mut verdicts = vec![
        CheckedIdeal {
            verdict: przytycki_check(&jones, p, n)?,
            ideal: IdealChain::przytycki(p, n)?.describe(),
        },
        CheckedIdeal {
            verdict: przytycki_variant_check(&jones, p, n)?,
            ideal: IdealChain::example_variant(p, n)?.describe(),
        },
    ];
    let level = match args.s {
        Some(s) => Some(s),
        None => strengthened_level(ranks.max_rank(), p, n),
    };
    let strengthened_skipped = match level {
        Some(s) => {
            verdicts.push(CheckedIdeal {
                verdict: strengthened_check_at(&jones, &ranks, p, n, s)?,
                ideal: IdealChain::strengthened(p, n, s)?.describe(),
            });
            None
        }
        None => Some(format!(
            "max Khovanov rank {} is not below phi({}) = {}",
            ranks.max_rank(),
            p,
            totient(p)
        )),
    };
    let obstructed = verdicts.iter().any(|v| v.verdict.obstructed());
    let period = p.pow(n);
    let summary = if obstructed {
        format!("not {period}-periodic")
    } else {
        format!("no obstruction to {period}-periodicity")
    };
    let report = CheckReport {
        input: path.into(),
        p,
        n,
        jones,
        max_rank: ranks.max_rank(),
        rank_source: ranks.provenance(),
        verdicts,
        strengthened_skipped,
        obstructed,
        summary,
    };
    emit(fmt, &report, || {
        let mut out = format!("jones = {}\n", report.jones);
        let source = match report.rank_source {
            Provenance::Computed => "computed",
            Provenance::Ingested => "ingested",
        };
        out += &format!("max Khovanov rank = {} ({source})\n", report.max_rank);
        for v in &report.verdicts {
            let name = match v.verdict.s {
                Some(s) if v.verdict.criterion == "strengthened" => format!("strengthened (s={s})"),
                _ => v.verdict.criterion.clone(),
            };
            let result = match (v.verdict.result, v.verdict.witness_stage) {
                (Outcome::Obstructed, Some(stage)) => format!("Obstructed (stage {stage})"),
                (Outcome::Obstructed, None) => "Obstructed".to_string(),
                (Outcome::NoObstruction, _) => "NoObstruction".to_string(),
            };
            out += &format!("{name}: {result}  mod {}\n", v.ideal);
        }
        if let Some(why) = &report.strengthened_skipped {
            out += &format!("strengthened: skipped, {why}\n");
        }
        out += &format!("verdict: {}\n", report.summary);
        out
    });
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct MurasugiReport {
    input: PathBuf,
    lk: i64,
    alpha: u32,
    jones: LaurentPoly,
    quotient_jones: LaurentPoly,
    #[serde(flatten)]
    verdict: Verdict,
}

pub fn murasugi(path: &Path, fmt: Format, budget: &Budget) -> anyhow::Result<Status> {
    let code = load_code(path, "murasugi")?;
    let verdict = murasugi_verify(&code, budget)?;
    let lk = code.lk_with_axis();
    let report = MurasugiReport {
        input: path.into(),
        lk,
        alpha: murasugi_alpha(lk),
        jones: jones_kauffman(&code.quotient(0)?, budget)?,
        quotient_jones: jones_kauffman(&code.quotient(code.n())?, budget)?,
        verdict,
    };
    let holds = report.verdict.result == Outcome::NoObstruction;
    emit(fmt, &report, || {
        let mut out = format!(
            "p = {}, n = {}, lk = {}, alpha = {}\n",
            report.verdict.p, report.verdict.n, report.lk, report.alpha
        );
        out += &format!("J(D) = {}\n", report.jones);
        out += &format!("J(D_*) = {}\n", report.quotient_jones);
        match &report.verdict.witness_poly {
            None => out += "congruence: PASS\n",
            Some(r) => out += &format!("congruence: FAIL, remainder {r}\n"),
        }
        out
    });
    Ok(if holds { Status::Ok } else { Status::PropertyFailed })
}

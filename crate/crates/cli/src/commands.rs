use std::collections::BTreeSet;
use std::fmt;
use std::io::Read;
use std::path::Path;

use rayon::prelude::*;

use hullforge::agcons::all_evalsets;
use hullforge::eaqecc::{derive_pair, propagate, reduce_hull, EaqeccParams};
use hullforge::galois::SUPPORTED_Q;
use hullforge::hullbound::{hull_report, HullReport};
use hullforge::io::fixtures::{self, Fixture, FIXTURE_D};
use hullforge::io::tables::{self, TableFormat};
use hullforge::lincode::{DistanceClaim, Provenance};
use hullforge::{Budget, CodeDocument, EvalSet, Family, FieldCtx, TwistedAgCode};

use crate::{
    Command, ConstructArgs, DocFormat, EaqeccArgs, FamilyArg, HullArgs, SweepArgs, TableArgs, TableFormatArg,
    VerifyArgs,
};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable input, or a construction precondition.
    Usage(String),
    /// A check ran and failed.
    Assertion(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Assertion(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Assertion(m) => f.write_str(m),
        }
    }
}

impl From<hullforge::Error> for CliError {
    fn from(e: hullforge::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Construct(a) => construct(a),
        Command::Hull(a) => hull(a),
        Command::Eaqecc(a) => eaqecc(a),
        Command::Table(a) => table(a),
        Command::Verify(a) => verify(a),
        Command::Sweep(a) => sweep(a),
    }
}

fn require(v: Option<usize>, flag: &str, family: &str) -> Result<usize> {
    v.ok_or_else(|| CliError::Usage(format!("--family {family} requires --{flag}")))
}

fn construct(a: ConstructArgs) -> Result<()> {
    let f = FieldCtx::for_q(a.q)?;
    let evalset = match a.family {
        FamilyArg::Subgroup => EvalSet::subgroup(&f, require(a.n, "n", "subgroup")?)?,
        FamilyArg::Affine => EvalSet::affine(&f, require(a.n0, "n0", "affine")?)?,
        FamilyArg::Cosets => EvalSet::cosets(&f, require(a.s, "s", "cosets")?, require(a.t, "t", "cosets")?)?,
    };
    let code = TwistedAgCode::build(&evalset, a.deg_g)?;
    let doc = CodeDocument::from_twisted(&code);
    let body = match a.format {
        DocFormat::Json => doc.to_json() + "\n",
        DocFormat::Text => doc.to_text(),
    };
    let params = format!("[{},{},{}]_{}", code.n(), code.k(), code.n() - a.deg_g, f.size());
    match a.out {
        Some(path) => {
            std::fs::write(&path, body)?;
            println!("{params}");
        }
        None => {
            eprintln!("{params}");
            print!("{body}");
        }
    }
    Ok(())
}

fn read_document(path: &Path) -> Result<CodeDocument> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
    };
    Ok(CodeDocument::parse(&text)?)
}

fn fmt_set(s: &BTreeSet<u64>) -> String {
    let items: Vec<String> = s.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn family_label(f: &Family) -> String {
    match f {
        Family::Subgroup { n } => format!("subgroup n={n}"),
        Family::Affine { n0 } => format!("affine n0={n0}"),
        Family::Cosets { s, t } => format!("cosets s={s} t={t}"),
        Family::Custom => "custom".into(),
    }
}

fn print_report(doc: &CodeDocument, r: &HullReport) {
    println!("code       [{},{},{}]_{}  ({}, deg_G {})", r.n, r.deg_g + 1, r.n - r.deg_g, r.q * r.q, family_label(&doc.family), r.deg_g);
    println!("N          {}", r.exponent);
    println!("L(N)       {}  ({})", fmt_set(&r.l_n), r.l_n.len());
    println!("L(q^2-1)   {}  ({})", fmt_set(&r.l_full), r.l_full.len());
    match &r.closed_form {
        Some(c) => {
            let d = c.decomposition;
            println!("closed     {} (case {}, n0={} q1={} k0={} q0={})", c.ell, c.case.0, d.n0, d.q1, d.k0, d.q0);
        }
        None => println!("closed     n/a"),
    }
    println!("exact ell  {}", r.ell_exact);
    println!("chain      {}", if r.chain_holds() { "holds" } else { "VIOLATED" });
}

fn hull(a: HullArgs) -> Result<()> {
    let doc = read_document(&a.input)?;
    let mut code = doc.linear_code()?;
    let mds = if a.mds {
        match code.verify_mds(Budget::from_env()) {
            Ok(v) => Some(v),
            Err(hullforge::Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let report = doc.twisted_code()?.map(|c| hull_report(&c)).transpose()?;
    match (a.format, &report) {
        (DocFormat::Json, Some(r)) => println!("{}", serde_json::to_string_pretty(r).expect("serializes")),
        (DocFormat::Json, None) => println!("{{\"n\": {}, \"k\": {}, \"ell_exact\": {}}}", code.n(), code.k(), code.hull_dim()),
        (DocFormat::Text, Some(r)) => print_report(&doc, r),
        (DocFormat::Text, None) => {
            println!("code       [{},{}]_{}  (generator only)", code.n(), code.k(), doc.q * doc.q);
            println!("exact ell  {}", code.hull_dim());
        }
    }
    if a.mds && a.format == DocFormat::Text {
        match mds {
            Some(v) => println!("mds        {}", if v { "verified" } else { "FAILED" }),
            None => println!("mds        skipped (budget)"),
        }
    }
    if let Some(r) = &report {
        if !r.chain_holds() {
            return Err(CliError::Assertion("hull inequality chain violated".into()));
        }
    }
    if mds == Some(false) {
        return Err(CliError::Assertion("a k×k minor is singular".into()));
    }
    Ok(())
}

fn params_line(p: &EaqeccParams) -> String {
    let slack: Vec<String> = p.slack.iter().map(|s| s.map_or("-".into(), |s| s.to_string())).collect();
    format!("{p}  mds={}  slack=({})", if p.mds { "yes" } else { "no" }, slack.join(", "))
}

fn eaqecc(a: EaqeccArgs) -> Result<()> {
    let doc = read_document(&a.input)?;
    let mut code = doc.linear_code()?;
    let ell = code.hull_dim();
    if let Some(target) = a.reduce_to {
        if target > ell {
            return Err(CliError::Usage(format!("--reduce-to {target} exceeds the hull dimension {ell}")));
        }
        code = reduce_hull(&code, target)?;
    }
    let ell = code.hull_dim();
    let (q1, q2) = derive_pair(&code)?;
    let main = if a.dual { q2 } else { q1 };
    let mut records = vec![main];
    if a.propagate {
        records.extend(propagate(&main, ell));
    }
    match a.format {
        DocFormat::Json => println!("{}", serde_json::to_string_pretty(&records).expect("serializes")),
        DocFormat::Text => {
            println!("{}", params_line(&main));
            if a.propagate {
                println!("propagated (assuming purity):");
                for p in &records[1..] {
                    println!("  {}", params_line(p));
                }
            }
        }
    }
    Ok(())
}

fn table(a: TableArgs) -> Result<()> {
    let fmt = match a.format {
        TableFormatArg::Markdown => Some(TableFormat::Markdown),
        TableFormatArg::Csv => Some(TableFormat::Csv),
        TableFormatArg::Json => None,
    };
    let json = |v: serde_json::Value| println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
    match a.which {
        0 => {
            let rows = tables::table0()?;
            match fmt {
                Some(f) => print!("{}", tables::render_table0(&rows, f)),
                None => json(serde_json::to_value(&rows).expect("serializes")),
            }
        }
        1 => {
            let rows = tables::table1()?;
            match fmt {
                Some(f) => print!("{}", tables::render_table1(&rows, f)),
                None => json(serde_json::to_value(&rows).expect("serializes")),
            }
        }
        _ => {
            let rows = tables::table2()?;
            match fmt {
                Some(f) => print!("{}", tables::render_table2(&rows, f)),
                None => json(serde_json::json!({
                    "derived": rows,
                    "external": tables::TABLE2_EXTERNAL.to_vec(),
                })),
            }
        }
    }
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<()> {
    let which: Vec<Fixture> = if a.fixture.eq_ignore_ascii_case("all") {
        Fixture::ALL.to_vec()
    } else {
        vec![Fixture::from_name(&a.fixture)
            .ok_or_else(|| CliError::Usage(format!("unknown fixture {:?} (a1, a2, all)", a.fixture)))?]
    };
    if let Some(path) = &a.out {
        let [fx] = which.as_slice() else {
            return Err(CliError::Usage("--out needs a single fixture".into()));
        };
        std::fs::write(path, fixture_document(*fx)?.to_json() + "\n")?;
    }
    let mut failure = None;
    for fx in which {
        let r = fixtures::verify(fx, a.samples, a.seed)?;
        for c in &r.checks {
            println!(
                "{} {:<22} expected {:>3}  got {:>3}  {}",
                r.fixture,
                c.name,
                c.expected,
                c.actual,
                if c.passed { "ok" } else { "FAIL" }
            );
        }
        println!("{} {}", r.fixture, if r.passed() { "PASS" } else { "FAIL" });
        if let (None, Some(c)) = (&failure, r.first_failure()) {
            failure = Some(format!("{}: {} expected {} got {}", r.fixture, c.name, c.expected, c.actual));
        }
    }
    match failure {
        Some(m) => Err(CliError::Assertion(m)),
        None => Ok(()),
    }
}

/// Document for a fixture, with the published distance recorded as structural.
fn fixture_document(fx: Fixture) -> Result<CodeDocument> {
    let code = fx.code()?.with_distance(DistanceClaim { d: FIXTURE_D, provenance: Provenance::Structural });
    Ok(CodeDocument::from_linear(&code))
}

struct SweepRow {
    line: String,
    ok: bool,
}

fn sweep(a: SweepArgs) -> Result<()> {
    let qs: Vec<u32> = if a.q.is_empty() {
        SUPPORTED_Q.iter().copied().filter(|&q| q <= 9).collect()
    } else {
        a.q.clone()
    };
    let budget = Budget::from_env();
    let mut jobs = Vec::new();
    for &q in &qs {
        let f = FieldCtx::for_q(q)?;
        for e in all_evalsets(&f).into_iter().filter(|e| e.twist_vector().is_ok()) {
            for deg in 0..=e.len() - 2 {
                jobs.push((e.clone(), deg));
            }
        }
    }
    let rows: Vec<std::result::Result<SweepRow, hullforge::Error>> = jobs
        .par_iter()
        .map(|(e, deg)| {
            let mut code = TwistedAgCode::build(e, *deg)?;
            let r = hull_report(&code)?;
            let mut ok = r.chain_holds();
            let mds = if a.mds && e.len() <= 12 {
                match code.code_mut().verify_mds(budget) {
                    Ok(v) => {
                        ok &= v;
                        if v { "yes" } else { "NO" }
                    }
                    Err(hullforge::Error::BudgetExceeded { .. }) => "skipped",
                    Err(err) => return Err(err),
                }
            } else {
                "-"
            };
            let closed = r.closed_form.as_ref().map_or("-".to_string(), |c| c.ell.to_string());
            let line = format!(
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.q,
                family_label(&e.family()),
                r.n,
                r.deg_g,
                r.exponent,
                r.l_n.len(),
                r.l_full.len(),
                closed,
                r.ell_exact,
                if r.chain_holds() { "ok" } else { "VIOLATED" },
                mds
            );
            Ok(SweepRow { line, ok })
        })
        .collect();
    println!("q,family,n,deg_g,N,|L(N)|,|L(q^2-1)|,closed,exact,chain,mds");
    let mut bad = 0;
    for row in rows {
        let row = row?;
        println!("{}", row.line);
        bad += (!row.ok) as usize;
    }
    eprintln!("{} codes checked, {bad} failures", jobs.len());
    if bad > 0 {
        return Err(CliError::Assertion(format!("{bad} codes failed a check")));
    }
    Ok(())
}

use std::path::PathBuf;
use std::process::ExitCode;

use biregular::claims::derivations::{derivation_steps, split_steps};
use biregular::claims::{
    builtin_claims, run_catalogue, search_congruences, verify_claim, Report, RingChoice, SearchParams, SeriesCache,
    Status,
};
use biregular::dissect::{verify_frobenius_congruence, verify_identity_by_id, Catalogue, IdentityOutcome};
use biregular::etaq::{biregular_gf, expand_product, materialize_eta, overpartition_gf};
use biregular::hecke::{eigen_check, newman_check, vanishing_class_check, NamedForm, NewmanProduct};
use biregular::{arith, oracle, BiregularSpec, Error, EtaQuotient, Ring};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "biregular", version, about = "q-series engine and congruence verifier for biregular overpartitions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    Exact,
    Mod,
}

impl From<RingArg> for RingChoice {
    fn from(r: RingArg) -> Self {
        match r {
            RingArg::Exact => RingChoice::Exact,
            RingArg::Mod => RingChoice::Mod,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductArg {
    F1f3,
    F1f5,
}

#[derive(Subcommand)]
enum Command {
    /// Print coefficients of a generating function or eta-quotient
    Expand {
        /// Biregular pair, e.g. 2,9
        #[arg(long, conflicts_with_all = ["eta", "overpartitions"])]
        spec: Option<BiregularSpec>,
        /// Eta-quotient, e.g. "6:4" or "4:1,20:1"
        #[arg(long)]
        eta: Option<EtaQuotient>,
        /// Plain overpartitions f2/f1^2
        #[arg(long)]
        overpartitions: bool,
        #[arg(long, default_value_t = 20)]
        order: usize,
        /// Reduce coefficients modulo this number
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Verify a catalogued dissection identity (or `frobenius:p,k,m`, or `all`)
    VerifyLemma {
        id: String,
        #[arg(long, default_value_t = 200)]
        order: usize,
    },
    /// Verify one catalogue claim
    VerifyClaim {
        id: String,
        #[arg(long)]
        nmax: Option<u64>,
        #[arg(long, value_enum, default_value = "mod")]
        ring: RingArg,
    },
    /// Verify the whole claim catalogue
    VerifyAll {
        #[arg(long)]
        filter: Option<String>,
        /// Write the JSON report here ("-" for stdout)
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        nmax: Option<u64>,
        #[arg(long, value_enum, default_value = "mod")]
        ring: RingArg,
    },
    /// List catalogue claims
    ListClaims {
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Compare the generating function with brute-force counts
    OracleCompare {
        #[arg(long)]
        spec: BiregularSpec,
        #[arg(long, default_value_t = 40)]
        nmax: u64,
    },
    /// Check the Hecke eigenform relation for a named form
    HeckeCheck {
        #[arg(long)]
        form: NamedForm,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 40)]
        nmax: usize,
    },
    /// Check the Newman recursion for f1f3 or f1f5
    NewmanCheck {
        #[arg(long, value_enum)]
        product: ProductArg,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 30)]
        nmax: usize,
    },
    /// Modularity conditions, character and cusp orders of an eta-quotient
    ModformCheck {
        #[arg(long)]
        eta: EtaQuotient,
        #[arg(long)]
        level: u64,
    },
    /// Search a box of progressions and moduli for vanishing congruences
    Search {
        #[arg(long)]
        spec: BiregularSpec,
        #[arg(long)]
        amax: u64,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,8")]
        mods: Vec<u64>,
        #[arg(long, default_value_t = 60)]
        nmax: u64,
        #[arg(long, default_value_t = 0)]
        min_evidence: u64,
        /// Hide congruences implied by a coarser one
        #[arg(long)]
        primitive: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check every intermediate extraction step
    VerifyDerivations {
        #[arg(long)]
        filter: Option<String>,
    },
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn print_identity(out: &IdentityOutcome) {
    match &out.failure {
        None => println!("PASS {} ({}) to order {}", out.id, out.kind, out.order),
        Some(f) => println!("FAIL {} ({}) at q^{}: {} vs {}", out.id, out.kind, f.index, f.lhs, f.rhs),
    }
}

fn run(cmd: Command) -> Result<bool, Error> {
    match cmd {
        Command::Expand { spec, eta, overpartitions, order, modulus } => {
            let ring = modulus.map(Ring::modulo).transpose()?.unwrap_or(Ring::Exact);
            let series = match (spec, eta) {
                (Some(s), _) => biregular_gf(s, order, ring)?,
                (None, Some(e)) => match materialize_eta(&e, order, ring) {
                    Ok(x) => x.series,
                    Err(Error::FractionalEtaShift { .. }) => {
                        println!("q^({}/24) ·", e.delta_sum());
                        expand_product(e.terms(), order, ring)?
                    }
                    Err(err) => return Err(err),
                },
                (None, None) if overpartitions => overpartition_gf(order, ring)?,
                (None, None) => return Err(Error::Precondition("give --spec, --eta or --overpartitions".into())),
            };
            println!("{series}");
            Ok(true)
        }
        Command::VerifyLemma { id, order } => {
            let outs = if id == "all" {
                Catalogue::builtin()
                    .identities()
                    .iter()
                    .map(|i| verify_identity_by_id(&i.id, order))
                    .collect::<Result<Vec<_>, _>>()?
            } else if let Some(rest) = id.strip_prefix("frobenius:") {
                let bad = || Error::Precondition(format!("expected frobenius:p,k,m, got {id}"));
                let parts: Vec<u64> = rest.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?;
                let [p, k, m] = parts[..] else { return Err(bad()) };
                vec![verify_frobenius_congruence(p, k as u32, m, order)?]
            } else {
                vec![verify_identity_by_id(&id, order)?]
            };
            outs.iter().for_each(print_identity);
            Ok(outs.iter().all(IdentityOutcome::holds))
        }
        Command::VerifyClaim { id, nmax, ring } => {
            let claim = builtin_claims().into_iter().find(|c| c.id == id).ok_or(Error::UnknownClaim(id))?;
            let claim = match nmax {
                Some(n) => claim.with_range(n),
                None => claim,
            };
            let r = verify_claim(&claim, ring.into(), &SeriesCache::new())?;
            println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
            Ok(r.status != Status::Fail)
        }
        Command::VerifyAll { filter, json, nmax, ring } => {
            let reports = run_catalogue(filter.as_deref(), nmax, ring.into())?;
            let report = Report::new(reports);
            let to_stdout = json.as_deref().is_some_and(|p| p.as_os_str() == "-");
            if !to_stdout {
                for c in &report.claims {
                    let tag = match c.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::SkippedHypothesisFalse => "SKIP",
                    };
                    let cex = c.counterexample.as_ref().map_or(String::new(), |x| {
                        format!(" at n={} (index {}): {} vs {}", x.n, x.index, x.value, x.expected)
                    });
                    println!("{tag} {:<40} {} [n={}..{}]{cex}", c.id, c.paper_ref, c.range[0], c.range[1]);
                }
                println!(
                    "{} pass, {} fail, {} skipped",
                    report.count(Status::Pass),
                    report.count(Status::Fail),
                    report.count(Status::SkippedHypothesisFalse)
                );
            }
            match json {
                Some(_) if to_stdout => println!("{}", report.to_json()),
                Some(p) => std::fs::write(&p, report.to_json())
                    .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", p.display())))?,
                None => {}
            }
            Ok(report.all_pass())
        }
        Command::ListClaims { filter, json } => {
            let claims: Vec<_> =
                builtin_claims().into_iter().filter(|c| filter.as_deref().map_or(true, |f| c.matches(f))).collect();
            if json {
                println!("{}", serde_json::to_string_pretty(&claims).expect("claims serialize"));
            } else {
                for c in &claims {
                    println!("{:<40} {} [n={}..{}]", c.id, c.statement(), c.n_min, c.n_max);
                }
            }
            Ok(true)
        }
        Command::OracleCompare { spec, nmax } => {
            let cmp = oracle::compare_series_vs_oracle(spec, nmax)?;
            match &cmp.mismatch {
                None => println!("PASS {} agrees with brute force for n <= {nmax}", spec.label()),
                Some(m) => println!("FAIL {} at n={}: series {} vs count {}", spec.label(), m.n, m.series, m.oracle),
            }
            Ok(cmp.agrees())
        }
        Command::HeckeCheck { form, prime, nmax } => {
            let a = form.expansion(nmax * prime as usize)?;
            let ctx = form.context();
            let eig = eigen_check(&a, prime, &ctx, nmax)?;
            let (m, r) = form.support_class();
            let support = vanishing_class_check(&a, m, r, a.order())?;
            println!(
                "{} T_{prime}: lambda = {} {} to n={}",
                mark(eig.holds()),
                eig.lambda,
                form,
                eig.checked_upto
            );
            if let Some(n) = eig.counterexample {
                println!("  first failure at n={n}");
            }
            println!("{} a(n) = 0 off n ≡ {r} (mod {m}) to n={}", mark(support.holds()), support.checked_upto);
            Ok(eig.holds() && support.holds())
        }
        Command::NewmanCheck { product, prime, nmax } => {
            let product = match product {
                ProductArg::F1f3 => NewmanProduct::F1F3,
                ProductArg::F1f5 => NewmanProduct::F1F5,
            };
            let out = newman_check(product, prime, nmax)?;
            println!("{} {product:?} p={prime} to n={}", mark(out.holds()), out.checked_upto);
            if let Some(n) = out.first_failure {
                println!("  first failure at n={n}");
            }
            Ok(out.holds())
        }
        Command::ModformCheck { eta, level } => {
            let rep = arith::modularity_check(&eta, level)?;
            println!("eta-quotient {eta} at level {level}");
            println!("  weight {}", rep.weight);
            println!("  sum delta*r = {} (≡ 0 mod 24: {})", rep.delta_sum, rep.cond_delta);
            println!("  sum (N/delta)*r = {} (≡ 0 mod 24: {})", rep.codelta_sum, rep.cond_codelta);
            if let Some(ch) = rep.character(&eta) {
                let vals: Vec<String> = (1..=12).map(|d| ch.eval(d).to_string()).collect();
                println!("  character values at 1..12: {}", vals.join(" "));
            }
            for (cusp, ord) in &rep.cusp_orders {
                println!("  cusp {}/{}: order {}", cusp.c, cusp.d, ord);
            }
            println!("  index of Gamma0({level}): {}", arith::gamma0_index(level)?);
            let holo = rep.conditions_hold() && arith::is_holomorphic(&eta, level)?.holomorphic;
            println!("{} modular and holomorphic at level {level}", mark(holo));
            Ok(holo)
        }
        Command::Search { spec, amax, mods, nmax, min_evidence, primitive, json } => {
            let params = SearchParams { spec, a_max: amax, moduli: mods, n_max: nmax, min_evidence };
            let found: Vec<_> = search_congruences(&params)?.into_iter().filter(|c| !primitive || !c.implied).collect();
            if json {
                println!("{}", serde_json::to_string_pretty(&found).expect("conjectures serialize"));
            } else {
                for c in &found {
                    let tag = c.rediscovered.as_deref().map_or("new".to_string(), |id| format!("known: {id}"));
                    let implied = if c.implied { ", implied" } else { "" };
                    println!("{}({}n+{}) ≡ 0 (mod {}) [{tag}{implied}]", spec.label(), c.a, c.b, c.modulus);
                }
                println!("{} congruences hold for n <= {nmax}", found.len());
            }
            Ok(true)
        }
        Command::VerifyDerivations { filter } => {
            let cache = SeriesCache::new();
            let keep = |id: &str| filter.as_deref().map_or(true, |f| id.contains(f));
            let mut all = true;
            for step in derivation_steps().into_iter().filter(|s| keep(&s.id)) {
                let out = step.verify(&cache)?;
                all &= out.holds();
                match &out.failure {
                    None => println!("PASS {:<28} {} to n={}", step.id, step.statement(), out.checked_upto),
                    Some(f) => println!("FAIL {:<28} {} at n={}: {} vs {}", step.id, step.statement(), f.index, f.lhs, f.rhs),
                }
            }
            for split in split_steps().into_iter().filter(|s| keep(&s.id)) {
                let out = split.verify()?;
                all &= out.holds();
                println!("{} {:<28} dissection components to order {}", mark(out.holds()), split.id, split.order);
            }
            Ok(all)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

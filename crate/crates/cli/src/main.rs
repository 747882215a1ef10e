//! `largeness`: analyze finitely presented groups for largeness, construct
//! the standard group families, and replay certificates.
//!
//! Exit codes: 0 success, 1 parse error, 2 resource limit, 3 internal error
//! or failed verification.

mod census;
mod doc;

use clap::{Parser, Subcommand};
use largeness_core::analyze::analyze;
use largeness_core::coset::rs_presentation;
use largeness_core::error::Error;
use largeness_core::freebycyclic::FreeEndomorphism;
use largeness_core::fox::{alexander_mod_p, alexander_polynomial};
use largeness_core::intmat::{abelian_invariants, kernel_basis, IntMatrix};
use largeness_core::lowindex::low_index_subgroups;
use largeness_core::onerelator::{higman_relator_checked, hnn_conjugate_extension, zero_exponent_basis, DriverBudget};
use largeness_core::presentation::{Chi, Presentation};
use largeness_core::text::{parse_presentation, parse_word, presentation_to_string};
use largeness_core::verdict::check_certificate;
use largeness_core::word::Word;

#[derive(Parser)]
#[command(name = "largeness", version, about = "Largeness certificates for finitely presented groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a presentation and emit a verdict with a replayable certificate
    Analyze {
        /// Inline presentation `< a, t | ... >` or a path to a file holding one
        input: String,
        #[arg(long, default_value_t = 8)]
        max_index: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_cosets: usize,
        /// Finite-image scan degree
        #[arg(long, default_value_t = 5)]
        degree: usize,
        #[arg(long)]
        json: bool,
    },
    /// Replay a verdict JSON document and check its certificate
    Verify {
        /// Path to a verdict JSON file, or `-` for stdin
        input: String,
    },
    /// Construct a named family member and print its presentation
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Enumerate conjugacy classes of low-index subgroups with abelianizations
    Lowindex {
        input: String,
        #[arg(long, default_value_t = 8)]
        max_index: usize,
        #[arg(long)]
        json: bool,
    },
    /// Alexander polynomial relative to chi
    Alex {
        input: String,
        /// Comma-separated chi values, one per generator (default: the unique
        /// primitive homomorphism onto Z when the first Betti number is 1)
        #[arg(long)]
        chi: Option<String>,
        /// Reduce mod this prime (requires deficiency 1)
        #[arg(long = "mod")]
        modulus: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Abelianization invariants
    Abelian {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Height data of a 2-generator 1-relator presentation
    Height {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Sample random height-1 presentations and report largeness statistics
    Census {
        /// Height-1 length k (the relator has 2k exponents)
        #[arg(long, default_value_t = 1)]
        length: usize,
        /// Exponents are sampled uniformly from [-bound, bound] minus 0
        #[arg(long, default_value_t = 4)]
        bound: i64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_index: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Baumslag-Solitar group BS(m, n) = <a, t | t a^m t^-1 = a^n>
    Bs { m: i64, n: i64 },
    /// C(m, n) = <a, t | (t a t^-1) a^m (t a t^-1)^-1 = a^n>
    Cmn { m: i64, n: i64 },
    /// Higman-style relator v^k w^m v^-k w^-n over <a, t>
    Higman {
        #[arg(long)]
        w: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        /// Enforce the proabelian-preserving hypothesis |m - n| = 1
        #[arg(long)]
        unit_gap: bool,
    },
    /// Iterated HNN conjugate extension of a presentation
    HnnIterate {
        input: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Mapping torus of a free-group automorphism given by generator images
    MappingTorus {
        /// Comma-separated images over x, y, z (or x1..xn), e.g. "y, z, x y"
        images: String,
    },
    /// Mapping torus of the doubled automorphism
    Double { images: String },
}

fn main() {
    // die quietly when a pipe consumer closes early instead of panicking
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            exit_code(&e)
        }
    });
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::UnknownGenerator(_) => 1,
        Error::CosetLimit(_)
        | Error::Resource(_)
        | Error::DegreeGuard(..)
        | Error::OrderGuard(..) => 2,
        _ => 3,
    }
}

fn load_presentation(input: &str) -> Result<Presentation, Error> {
    let text = if input.trim_start().starts_with('<') {
        input.to_string()
    } else {
        std::fs::read_to_string(input).map_err(|e| Error::Parse {
            pos: 0,
            msg: format!("cannot read {}: {}", input, e),
        })?
    };
    parse_presentation(&text)
}

fn parse_chi_arg(arg: &str, p: &Presentation) -> Result<Chi, Error> {
    let vals: Result<Vec<i64>, _> = arg.split(',').map(|s| s.trim().parse::<i64>()).collect();
    let vals = vals.map_err(|e| Error::Parse {
        pos: 0,
        msg: format!("bad chi `{}`: {}", arg, e),
    })?;
    let chi = Chi::new(vals);
    chi.validate(p)?;
    Ok(chi)
}

/// The primitive homomorphism onto Z, unique up to sign when beta1 = 1.
fn default_chi(p: &Presentation) -> Result<Chi, Error> {
    let m = IntMatrix::from_rows(p.exponent_rows());
    let basis = kernel_basis(&m);
    match basis.len() {
        0 => Err(Error::InvalidChi(
            "the group admits no surjection onto Z".into(),
        )),
        1 => {
            let mut vals: Vec<i64> = Vec::with_capacity(p.gen_count());
            for x in &basis[0] {
                vals.push(x.to_string().parse().map_err(|_| {
                    Error::Internal("chi value exceeds i64".into())
                })?);
            }
            if let Some(first) = vals.iter().find(|&&v| v != 0) {
                if *first < 0 {
                    for v in vals.iter_mut() {
                        *v = -*v;
                    }
                }
            }
            let g = vals
                .iter()
                .fold(0i64, |acc, &v| num_gcd(acc, v));
            if g > 1 {
                for v in vals.iter_mut() {
                    *v /= g;
                }
            }
            Ok(Chi::new(vals))
        }
        _ => Err(Error::InvalidChi(
            "first Betti number exceeds 1; pass --chi explicitly".into(),
        )),
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn parse_images(arg: &str) -> Result<FreeEndomorphism, Error> {
    let parts: Vec<&str> = arg.split(',').collect();
    let rank = parts.len();
    let names = Presentation::default_names(rank);
    let images: Result<Vec<Word>, Error> =
        parts.iter().map(|s| parse_word(s, &names)).collect();
    FreeEndomorphism::new(rank, images?)
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Analyze {
            input,
            max_index,
            max_cosets,
            degree,
            json,
        } => {
            let p = load_presentation(&input)?;
            let budget = DriverBudget {
                max_index,
                max_cosets,
                max_perm_degree: degree,
            };
            let verdict = analyze(&p, &budget)?;
            let document = doc::VerdictDoc::new(&p, &verdict, None);
            if json {
                print_json(&document);
            } else {
                println!("status: {}", document.status);
                match &verdict.certificate {
                    Some(cert) => {
                        println!("certificate: {}", cert.kind());
                        if let doc::CertDoc {
                            chi: Some(chi),
                            prime,
                            ..
                        } = &document.certificate.clone().unwrap()
                        {
                            println!("  chi: {:?}", chi);
                            match prime {
                                Some(pr) => println!("  prime: {}", pr),
                                None => println!("  prime: none (integer zero)"),
                            }
                        }
                        if let Some(inv) = &document.certificate.unwrap().abelian_invariants {
                            println!("  abelian invariants: {}", inv);
                        }
                    }
                    None => println!("certificate: none"),
                }
                for scan in &document.evidence.scans.subgroups {
                    println!(
                        "  scanned index {}: rank {} torsion {:?}",
                        scan.index, scan.rank, scan.torsion
                    );
                }
                for obs in &document.evidence.observations {
                    println!("  note: {}", obs);
                }
            }
            Ok(0)
        }
        Command::Verify { input } => {
            let text = if input == "-" {
                use std::io::Read;
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Error::Parse {
                        pos: 0,
                        msg: format!("cannot read stdin: {}", e),
                    })?;
                buf
            } else {
                std::fs::read_to_string(&input).map_err(|e| Error::Parse {
                    pos: 0,
                    msg: format!("cannot read {}: {}", input, e),
                })?
            };
            let document: doc::VerdictDoc =
                serde_json::from_str(&text).map_err(|e| Error::Parse {
                    pos: 0,
                    msg: format!("bad verdict JSON: {}", e),
                })?;
            let p = parse_presentation(&document.input_presentation)?;
            match &document.certificate {
                None => {
                    println!("no certificate to verify (status {})", document.status);
                    Ok(3)
                }
                Some(cd) => {
                    let cert = cd.to_certificate()?;
                    let check = check_certificate(&p, &cert);
                    if check.ok {
                        println!("true");
                        Ok(0)
                    } else {
                        println!("false");
                        for r in &check.reasons {
                            eprintln!("reason: {}", r);
                        }
                        Ok(3)
                    }
                }
            }
        }
        Command::Construct { family } => {
            let p = construct(family)?;
            println!("{}", presentation_to_string(&p));
            Ok(0)
        }
        Command::Lowindex {
            input,
            max_index,
            json,
        } => {
            let p = load_presentation(&input)?;
            let tables = low_index_subgroups(&p, max_index)?;
            let mut rows = Vec::new();
            for t in &tables {
                let rs = rs_presentation(t)?;
                let inv = abelian_invariants(&rs.presentation);
                rows.push(doc::SubgroupScanDoc {
                    index: t.index(),
                    rank: inv.rank,
                    torsion: inv.torsion.iter().map(|x| x.to_string()).collect(),
                });
            }
            if json {
                print_json(&rows);
            } else {
                for r in &rows {
                    println!("index {}: rank {} torsion {:?}", r.index, r.rank, r.torsion);
                }
            }
            Ok(0)
        }
        Command::Alex {
            input,
            chi,
            modulus,
            json,
        } => {
            let p = load_presentation(&input)?;
            let chi = match chi {
                Some(arg) => parse_chi_arg(&arg, &p)?,
                None => default_chi(&p)?,
            };
            let poly = match modulus {
                Some(pr) => alexander_mod_p(&p, &chi, pr)?,
                None => alexander_polynomial(&p, &chi)?,
            };
            if json {
                print_json(&serde_json::json!({
                    "chi": chi.values(),
                    "modulus": modulus,
                    "polynomial": poly.to_string(),
                }));
            } else {
                println!("{}", poly);
            }
            Ok(0)
        }
        Command::Abelian { input, json } => {
            let p = load_presentation(&input)?;
            let inv = abelian_invariants(&p);
            if json {
                print_json(&serde_json::json!({
                    "rank": inv.rank,
                    "torsion": inv.torsion.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                }));
            } else {
                println!("{}", inv);
            }
            Ok(0)
        }
        Command::Height { input, json } => {
            let p = load_presentation(&input)?;
            let candidates = zero_exponent_basis(&p)?;
            if json {
                let rows: Vec<_> = candidates
                    .iter()
                    .map(|c| {
                        serde_json::json!({
                            "t_generator": p.names().get(c.t_index).cloned()
                                .unwrap_or_else(|| format!("g{}", c.t_index)),
                            "chi": c.chi.values(),
                            "height": c.height.height,
                            "length_k": c.height.length_k,
                            "exponents": c.height.exponents,
                            "rewritten": c.height.rewritten,
                        })
                    })
                    .collect();
                print_json(&rows);
            } else {
                for c in &candidates {
                    println!(
                        "t = generator {}: height {}{}",
                        c.t_index,
                        c.height.height,
                        match &c.height.exponents {
                            Some(e) => format!(", exponents {:?}", e),
                            None => String::new(),
                        }
                    );
                }
            }
            Ok(0)
        }
        Command::Census {
            length,
            bound,
            samples,
            seed,
            max_index,
            json,
        } => {
            let budget = DriverBudget {
                max_index,
                ..DriverBudget::default()
            };
            let report = census::run_census(length, bound, samples, seed, &budget)?;
            if json {
                print_json(&report);
            } else {
                println!(
                    "{} samples (k = {}, bound {}): {} certified large, {} unknown",
                    report.samples, report.length, report.bound,
                    report.certified_large, report.unknown
                );
                for (kind, count) in &report.certificate_histogram {
                    println!("  {}: {}", kind, count);
                }
            }
            Ok(0)
        }
    }
}

fn construct(family: Family) -> Result<Presentation, Error> {
    let names2: Vec<String> = vec!["a".into(), "t".into()];
    match family {
        Family::Bs { m, n } => {
            let rel = parse_word(&format!("t a^{} t^-1 a^{}", m, -n), &names2)?;
            Presentation::new(names2, vec![rel])
        }
        Family::Cmn { m, n } => {
            let rel = parse_word(
                &format!("(t a t^-1) a^{} (t a t^-1)^-1 a^{}", m, -n),
                &names2,
            )?;
            Presentation::new(names2, vec![rel])
        }
        Family::Higman { w, v, k, m, n, unit_gap } => {
            let w = parse_word(&w, &names2)?;
            let v = parse_word(&v, &names2)?;
            let rel = higman_relator_checked(&w, &v, k, m, n, unit_gap)?;
            Presentation::new(names2, vec![rel])
        }
        Family::HnnIterate { input, count } => {
            let mut p = load_presentation(&input)?;
            for _ in 0..count {
                p = hnn_conjugate_extension(&p)?;
            }
            Ok(p)
        }
        Family::MappingTorus { images } => parse_images(&images)?.mapping_torus(),
        Family::Double { images } => parse_images(&images)?.double().mapping_torus(),
    }
}

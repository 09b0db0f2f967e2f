//! `lucasq`: filtered binomial sums, Lucas sequences, and congruence
//! verification from the command line.
//!
//! Exit codes: 0 success (and no verification failures), 1 verification
//! failure, 2 usage error, 3 domain error.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use lucasq_core::lucas::{lucas_pair, lucas_pair_mod, lucas_quotient, LucasParams};
use lucasq_core::numtheory::is_prime;
use lucasq_core::poly::cyclotomic_poly;
use lucasq_core::sums::{a_poly, bracket_direct, bracket_via_w, BracketQuery};
use lucasq_core::verifier::{self, SweepRange, VerificationReport};

const EXIT_OK: u8 = 0;
const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "lucasq",
    version,
    about = "Exact filtered binomial sums, Lucas sequences, and congruence verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    ViaW,
    Both,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    JsonLines,
}

#[derive(Subcommand)]
enum Command {
    /// Filtered binomial sum over k = r (mod m) with weight a^k
    Sum {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, value_enum, default_value_t = Method::Direct)]
        method: Method,
    },
    /// Coefficients of the recurrence polynomial A_m(x), ascending degree
    Apoly {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
    },
    /// Coefficients of the m-th cyclotomic polynomial, ascending degree
    Cyclotomic {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// Lucas pair (u_index, v_index), exact or reduced mod a modulus
    Lucas {
        #[arg(long = "A", allow_negative_numbers = true)]
        coeff_a: i64,
        #[arg(long = "B", allow_negative_numbers = true)]
        coeff_b: i64,
        #[arg(long)]
        index: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        modulus: Option<u64>,
    },
    /// Lucas quotient (u_index / p) mod p; requires p | u_index
    Quotient {
        #[arg(long = "A", allow_negative_numbers = true)]
        coeff_a: i64,
        #[arg(long = "B", allow_negative_numbers = true)]
        coeff_b: i64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        index: u64,
    },
    /// Sweep one identity (or the whole registry) over a prime range
    Verify {
        #[arg(long)]
        id: Option<String>,
        #[arg(long, default_value_t = 3)]
        prime_min: u64,
        #[arg(long)]
        prime_max: u64,
        #[arg(long, allow_negative_numbers = true)]
        a_min: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        a_max: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long, default_value_t = 4)]
        parallelism: usize,
    },
    /// List every registry identity: id | anchor | parameter kind
    ListIdentities,
}

fn usage(message: &str) -> u8 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

fn fmt_coeffs(coeffs: &[BigInt]) -> String {
    let parts: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn exit_code_for(reports: &[VerificationReport]) -> u8 {
    if reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn run_sum(n: u64, m: u64, r: i64, a: i64, method: Method) -> u8 {
    if [-1, 0, 1].contains(&a) {
        return usage("a must not be 0, 1, or -1; the filtered sums fix a != 0, +-1");
    }
    let query = match BracketQuery::new(n, m, r, a) {
        Ok(q) => q,
        Err(e) => return usage(&e.to_string()),
    };
    match method {
        Method::Direct => println!("{}", bracket_direct(&query)),
        Method::ViaW => println!("{}", bracket_via_w(&query)),
        Method::Both => {
            let direct = bracket_direct(&query);
            let via_w = bracket_via_w(&query);
            println!("direct={direct}");
            println!("via-w={via_w}");
            println!("match={}", direct == via_w);
        }
    }
    EXIT_OK
}

fn run_verify(
    id: Option<String>,
    prime_min: u64,
    prime_max: u64,
    a_min: Option<i64>,
    a_max: Option<i64>,
    format: Format,
    parallelism: usize,
) -> u8 {
    if prime_min > prime_max {
        return usage("prime-min must not exceed prime-max");
    }
    if parallelism == 0 {
        return usage("parallelism must be at least 1");
    }
    let a_values = if a_min.is_none() && a_max.is_none() {
        verifier::default_a_values()
    } else {
        let lo = a_min.unwrap_or(-6);
        let hi = a_max.unwrap_or(6);
        if lo > hi {
            return usage("a-min must not exceed a-max");
        }
        let values: Vec<i64> = (lo..=hi).filter(|a| ![-1, 0, 1].contains(a)).collect();
        if values.is_empty() {
            return usage("the a range contains no admissible values (a != 0, +-1)");
        }
        values
    };
    let range = SweepRange::new(prime_min, prime_max).with_a_values(a_values);
    let ids: Vec<&str> = match &id {
        Some(one) => match verifier::identity(one) {
            Ok(entry) => vec![entry.id],
            Err(_) => return usage(&format!("unknown identity id: {one}")),
        },
        None => verifier::registry().iter().map(|e| e.id).collect(),
    };
    let mut reports = Vec::with_capacity(ids.len());
    for entry_id in ids {
        match verifier::verify(entry_id, &range, parallelism) {
            Ok(report) => reports.push(report),
            Err(e) => return usage(&e.to_string()),
        }
    }
    match format {
        Format::Table => print!("{}", verifier::render_text(&reports)),
        Format::JsonLines => {
            for report in &reports {
                println!(
                    "{}",
                    serde_json::to_string(report).expect("reports serialize to JSON")
                );
            }
        }
    }
    exit_code_for(&reports)
}

fn run(cli: Cli) -> u8 {
    match cli.command {
        Command::Sum { n, m, r, a, method } => run_sum(n, m, r, a, method),
        Command::Apoly { m, a } => {
            if [-1, 0, 1].contains(&a) {
                return usage("a must not be 0, 1, or -1; the filtered sums fix a != 0, +-1");
            }
            println!("{}", fmt_coeffs(a_poly(m, a).coeffs()));
            EXIT_OK
        }
        Command::Cyclotomic { m } => {
            println!("{}", fmt_coeffs(cyclotomic_poly(m).coeffs()));
            EXIT_OK
        }
        Command::Lucas {
            coeff_a,
            coeff_b,
            index,
            modulus,
        } => {
            let params = LucasParams::new(coeff_a, coeff_b);
            match modulus {
                Some(m) => {
                    let pair = lucas_pair_mod(&params, index, m);
                    println!("u={} v={}", pair.u, pair.v);
                }
                None => {
                    let pair = lucas_pair(&params, index);
                    println!("u={} v={}", pair.u, pair.v);
                }
            }
            EXIT_OK
        }
        Command::Quotient {
            coeff_a,
            coeff_b,
            p,
            index,
        } => {
            if p < 3 || p % 2 == 0 || !is_prime(p) {
                return usage(&format!("{p} is not an odd prime"));
            }
            let params = LucasParams::new(coeff_a, coeff_b);
            match lucas_quotient(&params, p, index) {
                Ok(q) => {
                    println!("{q}");
                    EXIT_OK
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_DOMAIN
                }
            }
        }
        Command::Verify {
            id,
            prime_min,
            prime_max,
            a_min,
            a_max,
            format,
            parallelism,
        } => run_verify(id, prime_min, prime_max, a_min, a_max, format, parallelism),
        Command::ListIdentities => {
            for entry in verifier::registry() {
                println!("{} | {} | {}", entry.id, entry.anchor, entry.params_kind);
            }
            EXIT_OK
        }
    }
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes (e.g. `lucasq ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    ExitCode::from(run(cli))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty_report(failed: u64) -> VerificationReport {
        VerificationReport {
            identity_id: "X".into(),
            anchor: "anchor".into(),
            range: "p in [3, 5]".into(),
            checked: 1,
            skipped: 0,
            failed,
            failures: Vec::new(),
            skip_histogram: Default::default(),
        }
    }

    #[test]
    fn exit_code_reflects_failures() {
        assert_eq!(exit_code_for(&[empty_report(0), empty_report(0)]), 0);
        assert_eq!(exit_code_for(&[empty_report(0), empty_report(2)]), 1);
    }

    #[test]
    fn coefficient_formatting() {
        let p = a_poly(3, 2);
        assert_eq!(fmt_coeffs(p.coeffs()), "[3, 0, 1]");
    }
}

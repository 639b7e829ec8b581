use std::io::IsTerminal;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dunwoody::complexity::ComplexityOptions;
use dunwoody::diagram::{validate_params, GlueConvention};
use dunwoody::error::Error;
use dunwoody::families::{self, FamilySpec, TorusCase};
use dunwoody::reduction::DEFAULT_FOREST_CAP;
use dunwoody::report::{self, AnalyzeOptions, Grid};

mod render;

use render::Format;

const EXIT_USER: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_CALIBRATION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "dunwoody",
    version,
    about = "Complexity bounds for Dunwoody manifolds"
)]
struct Cli {
    /// Output format; defaults to md on a terminal and json otherwise.
    #[arg(long, global = true, env = "DUNWOODY_FORMAT")]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct EngineFlags {
    /// Give up exact forest enumeration after this many forests.
    #[arg(long, default_value_t = DEFAULT_FOREST_CAP)]
    max_forests: usize,
    /// Use a single greedy forest (upper bound only).
    #[arg(long)]
    greedy: bool,
    /// Vouch that the manifold is irreducible, enabling the lower bound.
    #[arg(long)]
    assume_irreducible: bool,
    /// Also analyze the equivalent parameters and compare.
    #[arg(long)]
    check_equivalence: bool,
}

impl EngineFlags {
    fn options(&self) -> AnalyzeOptions {
        AnalyzeOptions {
            complexity: self.complexity(),
            assume_irreducible: self.assume_irreducible,
            check_equivalence: self.check_equivalence,
        }
    }

    fn complexity(&self) -> ComplexityOptions {
        ComplexityOptions {
            max_forests: self.max_forests,
            greedy: self.greedy,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze H(a,b,c,n,r,s).
    Analyze {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[arg(allow_negative_numbers = true)]
        c: i64,
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(allow_negative_numbers = true)]
        r: i64,
        #[arg(allow_negative_numbers = true)]
        s: i64,
        #[command(flatten)]
        flags: EngineFlags,
    },
    /// Build a family member and check it against its expectations.
    Family {
        #[command(subcommand)]
        family: FamilyCommand,
    },
    /// Analyze every tuple of a grid.
    Sweep {
        /// Values of a: comma list and/or inclusive ranges like 1..3.
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        a: List,
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        b: List,
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        c: List,
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        n: List,
        /// Twists to try; every residue mod d when omitted.
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        r: Option<List>,
        /// Shifts to try; every residue mod n when omitted.
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        s: Option<List>,
        #[command(flatten)]
        flags: EngineFlags,
    },
    /// Run the battery that pins the gluing convention.
    Calibrate {
        /// Glue with a deliberately wrong convention.
        #[arg(long)]
        bug: Option<Bug>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Bug {
    ReverseOuter,
    NegateTwist,
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Cyclic branched covers of 2-bridge knots.
    #[command(name = "2bk")]
    TwoBridgeKnot {
        #[arg(long)]
        alpha: i64,
        #[arg(long)]
        beta: i64,
        #[arg(long)]
        n: i64,
        /// Use M(β, α−2β, 1, n, 2β+1, s) instead of the even-β form.
        #[arg(long)]
        direct: bool,
        /// With --direct, pick the shift by matching the homology oracle.
        #[arg(long)]
        search_s: bool,
        #[command(flatten)]
        flags: EngineFlags,
    },
    /// Cyclic branched covers of 2-bridge links.
    #[command(name = "2bl")]
    TwoBridgeLink {
        #[arg(long)]
        alpha: i64,
        #[arg(long)]
        beta: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[command(flatten)]
        flags: EngineFlags,
    },
    /// Cyclic branched covers of torus knots T(k, h).
    Torus {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        h: i64,
        #[arg(long)]
        n: i64,
        /// Force case 1, 2 or 3; the first fitting case otherwise.
        #[arg(long)]
        case: Option<u8>,
        /// Shift of the diagram; searched for in case 3 when omitted.
        #[arg(long, allow_negative_numbers = true)]
        shift: Option<i64>,
        #[command(flatten)]
        flags: EngineFlags,
    },
    /// Seifert manifolds S_n(p, q, ℓ).
    Seifert {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        n: i64,
        #[command(flatten)]
        flags: EngineFlags,
    },
    /// Cyclic branched covers of theta graphs over 2-bridge knots.
    Theta {
        #[arg(long)]
        alpha: i64,
        #[arg(long)]
        beta: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[command(flatten)]
        flags: EngineFlags,
    },
}

#[derive(Clone, Debug)]
struct List(Vec<i64>);

fn parse_list(raw: &str) -> Result<List, String> {
    let mut out = Vec::new();
    for part in raw.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: i64 = lo.trim().parse().map_err(|e| format!("{part}: {e}"))?;
            let hi: i64 = hi
                .trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|e| format!("{part}: {e}"))?;
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|e| format!("{part}: {e}"))?);
        }
    }
    Ok(List(out))
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if e.is_user_error() {
        EXIT_USER
    } else {
        EXIT_INTERNAL
    })
}

fn build_family(family: &FamilyCommand) -> Result<(FamilySpec, EngineFlags), Error> {
    Ok(match *family {
        FamilyCommand::TwoBridgeKnot {
            alpha,
            beta,
            n,
            direct,
            search_s,
            flags,
        } => {
            let spec = if direct || search_s {
                let mut spec = families::two_bridge_knot_cover_direct(alpha, beta, n)?;
                if search_s {
                    let shifts = families::two_bridge_knot_shifts(alpha, beta, n)?;
                    spec.notes
                        .push(format!("shifts matching the homology oracle: {shifts:?}"));
                    if let Some(&s) = shifts.first() {
                        let (a, b, c, n, r, _) = spec.params.as_tuple();
                        spec.params =
                            validate_params(a as i64, b as i64, c as i64, n as i64, r as i64, s)?;
                        spec.family.insert("s".into(), s);
                    }
                }
                spec
            } else {
                families::two_bridge_knot_cover(alpha, beta, n)?
            };
            (spec, flags)
        }
        FamilyCommand::TwoBridgeLink {
            alpha,
            beta,
            n,
            s,
            flags,
        } => (families::two_bridge_link_cover(alpha, beta, n, s)?, flags),
        FamilyCommand::Torus {
            k,
            h,
            n,
            case,
            shift,
            flags,
        } => {
            let fits = TorusCase::fits(k, h);
            let chosen = match case {
                None => fits.first().copied(),
                Some(c) => fits.iter().copied().find(|f| f.number() == c),
            }
            .ok_or_else(|| Error::CaseMismatch(format!("T({k},{h}), case {case:?}")))?;
            (families::torus_knot_cover(chosen, n, shift)?, flags)
        }
        FamilyCommand::Seifert { p, q, l, n, flags } => (families::seifert(p, q, l, n)?, flags),
        FamilyCommand::Theta {
            alpha,
            beta,
            n,
            s,
            flags,
        } => (families::theta_cover(alpha, beta, n, s)?, flags),
    })
}

fn run(cli: Cli) -> ExitCode {
    let format = cli.format.unwrap_or(if std::io::stdout().is_terminal() {
        Format::Md
    } else {
        Format::Json
    });
    match cli.command {
        Command::Analyze {
            a,
            b,
            c,
            n,
            r,
            s,
            flags,
        } => {
            let result = validate_params(a, b, c, n, r, s)
                .and_then(|p| report::analyze(&p, None, &flags.options()));
            match result {
                Ok(rep) => render::emit(format, render::report(format, &rep)),
                Err(e) => fail(&e),
            }
        }
        Command::Family { family } => {
            let result = build_family(&family)
                .and_then(|(spec, flags)| report::analyze_family(spec, &flags.options()));
            match result {
                Ok(rep) => render::emit(format, render::report(format, &rep)),
                Err(e) => fail(&e),
            }
        }
        Command::Sweep {
            a,
            b,
            c,
            n,
            r,
            s,
            flags,
        } => {
            let grid = Grid {
                a: a.0,
                b: b.0,
                c: c.0,
                n: n.0,
                r: r.map(|l| l.0),
                s: s.map(|l| l.0),
            };
            let tuples = grid.tuples();
            let rows = report::sweep(&tuples, &flags.complexity());
            let code = render::emit(format, render::sweep(format, &rows));
            if !rows.is_empty() && rows.iter().all(|r| r.error.is_some()) {
                ExitCode::from(EXIT_USER)
            } else {
                code
            }
        }
        Command::Calibrate { bug } => {
            let conv = match bug {
                None => GlueConvention::default(),
                Some(Bug::ReverseOuter) => GlueConvention {
                    reverse_outer: true,
                    negate_twist: false,
                },
                Some(Bug::NegateTwist) => GlueConvention {
                    reverse_outer: false,
                    negate_twist: true,
                },
            };
            let items = report::calibrate(conv);
            let code = render::emit(format, render::calibration(format, &items));
            if report::calibration_error(&items).is_some() {
                ExitCode::from(EXIT_CALIBRATION)
            } else {
                code
            }
        }
    }
}

fn main() -> ExitCode {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USER } else { 0 };
            let _ = e.print();
            ExitCode::from(code)
        }
    }
}

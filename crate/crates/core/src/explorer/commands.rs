//! Command dispatch. Every command turns parsed inputs into a [`Report`].

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use super::grid::{enumerate_hilbert_functions, explore_threshold, ExperimentGrid, GridMode, DEFAULT_CAP};
use super::json::{self, Report};
use super::parse::{parse_file, IdealFile};
use super::reproduce::{reproduce_paper, suite_report, ReproduceOptions};
use crate::error::{Error, Result};
use crate::gin::{generic_initial_ideal, is_borel_fixed, GinOptions};
use crate::groebner::{buchberger, codimension, default_m_max, hilbert_function, krull_dimension};
use crate::resolution::{minimal_resolution, ResolveOptions};
use crate::ring::{FieldSpec, MonomialOrder};
use crate::strength::{nu_tuple, strength_quadric, NuReport, QuadraticForm};
use crate::structure::{
    decompose_to_high_nu, jacobian_independent, pd_transfer, regular_sequence_report, SubalgebraPresentation,
    ThresholdFunction,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Command {
    Gb,
    Hilbert,
    Dim,
    Resolve,
    Betti,
    Pd,
    Nu,
    Strength,
    Regseq,
    Independent,
    Decompose,
    Gin,
    PdTransfer,
    EnumerateHf,
    ExploreThreshold,
    ReproducePaper,
}

impl Command {
    pub const ALL: [Command; 16] = [
        Command::Gb,
        Command::Hilbert,
        Command::Dim,
        Command::Resolve,
        Command::Betti,
        Command::Pd,
        Command::Nu,
        Command::Strength,
        Command::Regseq,
        Command::Independent,
        Command::Decompose,
        Command::Gin,
        Command::PdTransfer,
        Command::EnumerateHf,
        Command::ExploreThreshold,
        Command::ReproducePaper,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Hilbert => "hilbert",
            Command::Dim => "dim",
            Command::Resolve => "resolve",
            Command::Betti => "betti",
            Command::Pd => "pd",
            Command::Nu => "nu",
            Command::Strength => "strength",
            Command::Regseq => "regseq",
            Command::Independent => "independent",
            Command::Decompose => "decompose",
            Command::Gin => "gin",
            Command::PdTransfer => "pd-transfer",
            Command::EnumerateHf => "enumerate-hf",
            Command::ExploreThreshold => "explore-threshold",
            Command::ReproducePaper => "reproduce-paper",
        }
    }

    /// Grid and suite commands take no input files.
    pub fn takes_files(&self) -> bool {
        !matches!(
            self,
            Command::EnumerateHf | Command::ExploreThreshold | Command::ReproducePaper
        )
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown command `{s}`")))
    }
}

/// An ideal file held in memory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Input {
    pub name: String,
    pub text: String,
}

/// Grid shape for `enumerate-hf` and `explore-threshold`. Without
/// `samples` the grid is exhaustive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridArgs {
    pub n_min: usize,
    pub n_max: usize,
    pub degrees: Vec<u64>,
    pub samples: Option<u64>,
    pub reverse: bool,
}

impl Default for GridArgs {
    fn default() -> Self {
        GridArgs {
            n_min: 2,
            n_max: 2,
            degrees: vec![2, 2],
            samples: None,
            reverse: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CommandArgs {
    pub inputs: Vec<Input>,
    /// Replaces the field named in the file headers.
    pub field: Option<FieldSpec>,
    pub seed: u64,
    pub m_max: Option<u64>,
    pub trials: Option<usize>,
    pub cap: Option<u64>,
    pub order: MonomialOrder,
    /// `nu`: treat the file as one tuple instead of separate forms.
    pub tuple: bool,
    /// `decompose`: the threshold `N`, `N = 1` when absent.
    pub threshold: Option<ThresholdFunction>,
    pub grid: GridArgs,
    pub perturb_syzygies: bool,
}

impl Default for CommandArgs {
    fn default() -> Self {
        CommandArgs {
            inputs: Vec::new(),
            field: None,
            seed: 0,
            m_max: None,
            trials: None,
            cap: None,
            order: MonomialOrder::Grevlex,
            tuple: false,
            threshold: None,
            grid: GridArgs::default(),
            perturb_syzygies: false,
        }
    }
}

impl CommandArgs {
    fn options_json(&self) -> Value {
        json!({
            "field": self.field.map(|f| f.name()),
            "m_max": self.m_max,
            "trials": self.trials,
            "cap": self.cap,
            "order": self.order.name(),
            "tuple": self.tuple,
            "threshold": self.threshold,
        })
    }
}

fn parse_inputs(args: &CommandArgs) -> Result<Vec<IdealFile>> {
    args.inputs
        .iter()
        .map(|input| {
            parse_file(&input.text, args.field).map_err(|e| match e {
                Error::Parse { line, column, message } => Error::Parse {
                    line,
                    column,
                    message: format!("{message} (in {})", input.name),
                },
                other => other,
            })
        })
        .collect()
}

fn files_json(args: &CommandArgs, files: &[IdealFile]) -> Value {
    Value::Array(
        args.inputs
            .iter()
            .zip(files)
            .map(|(input, f)| {
                json!({
                    "name": input.name,
                    "ring": json::ring(&f.ring),
                    "polynomials": json::polynomials(&f.polynomials),
                })
            })
            .collect(),
    )
}

fn nu_json(r: &NuReport) -> Value {
    json!({
        "nu": json::nu(r.value),
        "combination": r.combination.as_ref().map(|c| c.iter().map(json::coeff).collect::<Vec<_>>()),
        "witness": r.witness.as_ref().map(json::witness),
    })
}

fn exactly(files: &[IdealFile], range: std::ops::RangeInclusive<usize>, cmd: Command) -> Result<()> {
    if range.contains(&files.len()) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "`{cmd}` takes {} input file(s), got {}",
            if range.start() == range.end() {
                range.start().to_string()
            } else {
                format!("{} to {}", range.start(), range.end())
            },
            files.len()
        )))
    }
}

/// Runs one command on one input file.
fn run_on_file(cmd: Command, args: &CommandArgs, file: &IdealFile) -> Result<Value> {
    let fs = &file.polynomials;
    Ok(match cmd {
        Command::Gb => {
            let gb = buchberger(&file.ideal(), args.order)?;
            json!({
                "order": args.order.name(),
                "basis": json::polynomials(gb.basis()),
                "leading_monomials": gb.leading_monomials().iter().map(json::monomial).collect::<Vec<_>>(),
            })
        }
        Command::Hilbert => {
            let ideal = file.ideal();
            let m = args.m_max.unwrap_or_else(|| default_m_max(&ideal));
            json!({"m_max": m, "hf": json::hilbert(&hilbert_function(&ideal, m)?)})
        }
        Command::Dim => {
            let ideal = file.ideal();
            json!({"krull_dimension": krull_dimension(&ideal)?, "codimension": codimension(&ideal)?})
        }
        Command::Resolve => {
            let opts = ResolveOptions {
                order: args.order,
                perturb_syzygies: args.perturb_syzygies,
                ..ResolveOptions::default()
            };
            let (res, betti) = minimal_resolution(&file.ideal(), &opts)?;
            json!({
                "ranks": res.ranks(),
                "maps": res.maps().iter().map(json::matrix).collect::<Vec<_>>(),
                "betti": json::betti(&betti),
                "pd": res.length(),
                "exactness": res.verify_with(args.order)?,
            })
        }
        Command::Betti => {
            let (_, betti) = minimal_resolution(&file.ideal(), &ResolveOptions::default())?;
            json!({
                "betti": json::betti(&betti),
                "totals": betti.totals(),
                "table": betti.to_string(),
            })
        }
        Command::Pd => {
            let (res, _) = minimal_resolution(&file.ideal(), &ResolveOptions::default())?;
            json!({"pd": res.length()})
        }
        Command::Nu if args.tuple => nu_json(&nu_tuple(fs)?),
        Command::Nu => {
            let forms = fs
                .iter()
                .map(|f| Ok(nu_json(&nu_tuple(std::slice::from_ref(f))?)))
                .collect::<Result<Vec<_>>>()?;
            json!({"forms": forms})
        }
        Command::Strength => {
            let forms = fs
                .iter()
                .map(|f| Ok(json!({"strength": strength_quadric(f)?, "rank": QuadraticForm::new(f)?.rank()})))
                .collect::<Result<Vec<_>>>()?;
            json!({"forms": forms})
        }
        Command::Regseq => {
            let rep = regular_sequence_report(fs)?;
            json!({"regular": rep.regular, "codim": rep.codim})
        }
        Command::Independent => json!({"independent": jacobian_independent(fs)?}),
        Command::Decompose => {
            let threshold = args.threshold.clone().unwrap_or(ThresholdFunction::Constant(1));
            let d = decompose_to_high_nu(fs, &threshold)?;
            let outer_ring = d.outers.first().map(|f| json::ring(f.ring()));
            json!({
                "inner": json::polynomials(&d.inner),
                "outer_ring": outer_ring,
                "outers": json::polynomials(&d.outers),
                "nu": json::nu(d.nu),
                "length": d.inner.len(),
                "steps": d.steps,
            })
        }
        Command::Gin => {
            let opts = GinOptions {
                seed: args.seed,
                trials: args.trials.unwrap_or(GinOptions::default().trials),
                ..GinOptions::default()
            };
            let g = generic_initial_ideal(&file.ideal(), &opts)?;
            json!({
                "gin": json::polynomials(g.gin.generators()),
                "stable": g.stable,
                "borel_fixed": is_borel_fixed(&g.gin),
                "trials_used": g.trials_used,
                "bound_used": g.bound_used,
            })
        }
        Command::PdTransfer | Command::EnumerateHf | Command::ExploreThreshold | Command::ReproducePaper => {
            unreachable!("not a per-file command")
        }
    })
}

fn grid_of(args: &CommandArgs) -> Result<ExperimentGrid> {
    let field = match args.field {
        Some(f) => f,
        None => FieldSpec::prime(3)?,
    };
    let g = &args.grid;
    let mode = match g.samples {
        Some(samples) => GridMode::Sample { samples },
        None => GridMode::Exhaustive,
    };
    let mut grid = ExperimentGrid::new(field, g.n_min, g.n_max, g.degrees.clone(), mode);
    grid.seed = args.seed;
    grid.cap = args.cap.unwrap_or(DEFAULT_CAP);
    grid.m_max = args.m_max;
    grid.reverse = g.reverse;
    Ok(grid)
}

/// Runs `cmd`. Parse failures keep their line and column; the name of the
/// offending input is appended to the message.
pub fn run_command(cmd: Command, args: &CommandArgs) -> Result<Report> {
    if !cmd.takes_files() && !args.inputs.is_empty() {
        return Err(Error::InvalidInput(format!("`{cmd}` takes no input files")));
    }
    match cmd {
        Command::EnumerateHf | Command::ExploreThreshold => {
            let grid = grid_of(args)?;
            let results = if cmd == Command::EnumerateHf {
                enumerate_hilbert_functions(&grid)?.to_json()
            } else {
                explore_threshold(&grid)?.to_json()
            };
            Ok(Report::new(cmd.name(), args.seed, json!({"grid": grid.to_json()}), results))
        }
        Command::ReproducePaper => {
            let opts = ReproduceOptions {
                seed: args.seed,
                perturb_syzygies: args.perturb_syzygies,
            };
            Ok(suite_report(&opts, &reproduce_paper(&opts)))
        }
        Command::PdTransfer => {
            let files = parse_inputs(args)?;
            exactly(&files, 1..=2, cmd)?;
            let inner = files[0].polynomials.clone();
            // without an outer file the presentation is the identity one,
            // F_j = X_j
            let outers = match files.get(1) {
                Some(f) => f.polynomials.clone(),
                None => {
                    let t = crate::structure::outer_ring(files[0].ring.field(), &inner)?;
                    (0..inner.len())
                        .map(|j| crate::ring::Polynomial::var(&t, j))
                        .collect::<Result<Vec<_>>>()?
                }
            };
            let sp = SubalgebraPresentation::new(inner, outers)?;
            let t = pd_transfer(&sp)?;
            Ok(Report::new(
                cmd.name(),
                args.seed,
                json!({"files": files_json(args, &files), "options": args.options_json()}),
                json!({
                    "outer_ring": json::ring(sp.outer_ring()),
                    "images": json::polynomials(sp.images()),
                    "pd_inner": t.pd_inner,
                    "pd_ambient": t.pd_ambient,
                    "agree": t.agree,
                }),
            ))
        }
        _ => {
            let files = parse_inputs(args)?;
            if files.is_empty() {
                return Err(Error::InvalidInput(format!("`{cmd}` needs an input file")));
            }
            let mut per_file = files
                .iter()
                .map(|f| run_on_file(cmd, args, f))
                .collect::<Result<Vec<_>>>()?;
            let results = if per_file.len() == 1 {
                per_file.pop().unwrap()
            } else {
                let mut m = Map::new();
                m.insert("files".into(), Value::Array(per_file));
                Value::Object(m)
            };
            Ok(Report::new(
                cmd.name(),
                args.seed,
                json!({"files": files_json(args, &files), "options": args.options_json()}),
                results,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(text: &str) -> CommandArgs {
        CommandArgs {
            inputs: vec![Input {
                name: "in.ideal".into(),
                text: text.into(),
            }],
            ..CommandArgs::default()
        }
    }

    #[test]
    fn names_round_trip() {
        for c in Command::ALL {
            assert_eq!(c.name().parse::<Command>().unwrap(), c);
        }
        assert!("frobnicate".parse::<Command>().is_err());
    }

    #[test]
    fn pd_of_the_two_monomial_ideal() {
        let r = run_command(Command::Pd, &one("ring QQ[x1,x2]\nx1^2\nx1*x2")).unwrap();
        assert_eq!(r.results, json!({"pd": 2}));
    }

    #[test]
    fn nu_tuple_of_five_squares() {
        let mut args = one("ring QQ[x1,x2,x3,x4,x5]\nx1^2+x2^2+x3^2+x4^2+x5^2");
        args.tuple = true;
        let r = run_command(Command::Nu, &args).unwrap();
        assert_eq!(r.results["nu"], json!(5));
    }

    #[test]
    fn regseq_xy_xz() {
        let r = run_command(Command::Regseq, &one("ring QQ[x,y,z]\nx*y\nx*z")).unwrap();
        assert_eq!(r.results, json!({"regular": false, "codim": 1}));
    }

    #[test]
    fn parse_errors_keep_position() {
        let e = run_command(Command::Pd, &one("ring QQ[x]\nx^^2")).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 3, .. }));
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn identical_runs_are_byte_identical() {
        for cmd in [Command::Gb, Command::Resolve, Command::Hilbert, Command::Decompose] {
            let args = one("ring F7[x,y,z]\nx^2 + y*z\ny^2 - 3*x*z");
            let a = run_command(cmd, &args).unwrap().to_json();
            let b = run_command(cmd, &args).unwrap().to_json();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn identity_transfer() {
        let r = run_command(Command::PdTransfer, &one("ring QQ[x,y]\nx^2\ny^2")).unwrap();
        assert_eq!(r.results["pd_inner"], json!(2));
        assert_eq!(r.results["agree"], json!(true));
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use galsplit::groupspec::{field_of_order, parse_group, parse_rep};
use galsplit::grp::unique_abelian_index_n;
use galsplit::induce::induced_split_check;
use galsplit::report::{Check, VerificationReport};
use galsplit::repalg::{
    direct_sum, direct_sum_tuple_check, pgl_psl_analysis, scalar_detection, pair_group_checks, tensor,
    tensor_directsum_image_iso, ProjRep,
};
use galsplit::sdp::psi_iso_check;
use galsplit::split::{cyclic_transversal_search, dirichlet_condition_search};
use galsplit::suites::{checks_report, induce_checks, run_suite, subgroup_shapes, Corpus, InduceCase, RunConfig, SdpSpec, SUITES};
use galsplit::{Error, Result};

#[derive(Parser)]
#[command(name = "galsplit", version, about = "Split-extension and induced-representation verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Sampling {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
}

impl Sampling {
    fn config(self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            samples: self.samples,
        }
    }
}

#[derive(Args)]
struct InduceArgs {
    /// Group spec: gl2:q, sl2:q, pgl2:q, psl2:q, cyclic:n, sym:n, table:FILE
    #[arg(long)]
    group: String,
    /// Normal subgroup spec: whole, trivial, derived, center, sl2, psl2, det-power:n, index:n, gens:i,j
    #[arg(long)]
    subgroup: String,
    /// Representation of the whole group; it is restricted to the subgroup and induced back.
    #[arg(long)]
    rep: String,
    /// Coefficient field order for non-matrix groups.
    #[arg(long)]
    ell: Option<u32>,
}

impl InduceArgs {
    fn case(&self) -> InduceCase {
        InduceCase {
            group: self.group.clone(),
            subgroup: self.subgroup.clone(),
            rep: self.rep.clone(),
            ell: self.ell,
        }
    }
}

#[derive(Args)]
struct RepsArgs {
    #[arg(long)]
    group: String,
    /// Repeat once per summand or factor.
    #[arg(long = "rep", required = true)]
    reps: Vec<String>,
    #[arg(long)]
    ell: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite over the default or a supplied corpus.
    Verify {
        #[arg(long, value_parser = SUITES)]
        suite: String,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Build a semidirect product from a JSON spec and check the fiber-product isomorphism.
    Sdp {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Induce a representation from a normal subgroup and check its properties.
    Induce {
        #[command(flatten)]
        args: InduceArgs,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Search for a cyclic transversal of the index-n subgroup with abelian quotient.
    Splitcheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        index: usize,
    },
    /// Primes p up to the limit with n | p^r - 1 and gcd(n, (p^r - 1)/n) = 1.
    Primesearch {
        #[arg(short = 'n')]
        n: u64,
        #[arg(short = 'r', default_value_t = 1)]
        r: u64,
        #[arg(long)]
        limit: u64,
    },
    /// Direct sums, tensor products, projective images and pair groups.
    #[command(subcommand)]
    Repalg(RepalgCommand),
}

#[derive(Subcommand)]
enum RepalgCommand {
    /// Projective image of a direct sum against the tuple of projective images.
    Dsum(RepsArgs),
    /// Orders of the linear and projective images of a tensor product.
    Tensor(RepsArgs),
    /// Isomorphism between the projective images of direct sum and tensor product.
    Iso(RepsArgs),
    /// Kronecker products of random invertible matrices are scalar only for scalar factors.
    Scalar {
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Pair-group statements for an induced representation.
    Pair(InduceArgs),
    /// Split verdict for the image of an induced representation.
    Split(InduceArgs),
    /// PGL2 against PSL2 x C2 and the order-2 witness.
    Pglpsl {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn emit(report: &VerificationReport, json: Option<&PathBuf>) -> Result<ExitCode> {
    print!("{}", report.render_table());
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(report).map_err(|e| Error::Parse(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn reps_of(args: &RepsArgs) -> Result<Vec<galsplit::induce::Rep>> {
    let g = parse_group(&args.group)?;
    args.reps.iter().map(|r| parse_rep(&g, r, args.ell)).collect()
}

fn reps_params(args: &RepsArgs) -> Vec<(&'static str, String)> {
    vec![("group", args.group.clone()), ("reps", args.reps.join(" + "))]
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify {
            suite,
            corpus,
            json,
            sampling,
        } => {
            let corpus = match corpus {
                Some(path) => serde_json::from_str(&read(&path)?).map_err(|e| Error::Parse(e.to_string()))?,
                None => Corpus::default(),
            };
            let report = run_suite(&suite, &corpus, &sampling.config())?;
            emit(&report, json.as_ref())
        }
        Command::Sdp { spec, seed } => {
            let spec: SdpSpec = serde_json::from_str(&read(&spec)?).map_err(|e| Error::Parse(e.to_string()))?;
            let data = spec.build()?;
            let (_, rep) = psi_iso_check(&data, seed)?;
            let check = Check::holds(
                "fiber product is isomorphic to the semidirect product",
                rep.ok(),
                format!("order {}, {} pairs, {}", rep.order, rep.pairs_checked, rep.mode),
            );
            let cfg = RunConfig { seed, samples: 0 };
            emit(&checks_report("sdp", &[("factors", spec.label())], vec![check], &cfg), None)
        }
        Command::Induce { args, sampling } => {
            let case = args.case();
            let cfg = sampling.config();
            let checks = induce_checks(&case, &cfg)?;
            emit(&checks_report("induce", &case.params(), checks, &cfg), None)
        }
        Command::Splitcheck { group, index } => {
            let g = parse_group(&group)?;
            let h = unique_abelian_index_n(&g.group, index)?;
            let rep = cyclic_transversal_search(&g.group, &h)?;
            println!("group {} (order {}), index {index}", g.group.name(), g.group.order());
            println!("m = {}, gcd(n, m/n) = {}, verdict {:?}", rep.m, rep.gcd, rep.verdict);
            if let Some(w) = &rep.witness {
                println!("witness {}", w.label);
            }
            Ok(if rep.is_consistent(&g.group, &h) { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Primesearch { n, r, limit } => {
            let primes = dirichlet_condition_search(n, r, limit)?;
            let text: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
            println!("{}", text.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        Command::Repalg(cmd) => repalg(cmd),
    }
}

fn repalg(cmd: RepalgCommand) -> Result<ExitCode> {
    let cfg = RunConfig::default();
    match cmd {
        RepalgCommand::Dsum(args) => {
            let r = direct_sum_tuple_check(&reps_of(&args)?)?;
            let check = Check::holds(
                "projective image of a direct sum is the tuple of projective images",
                r.bijective,
                format!("orders {} and {}", r.sum_image_order, r.tuple_group_order),
            );
            emit(&checks_report("repalg", &reps_params(&args), vec![check], &cfg), None)
        }
        RepalgCommand::Tensor(args) => {
            let reps = reps_of(&args)?;
            let t = tensor(&reps)?;
            let s = direct_sum(&reps)?;
            let (linear, _) = t.image()?;
            let proj = ProjRep::new(&t)?;
            let sum = ProjRep::new(&s)?;
            println!("tensor dimension {}", t.dim());
            println!("linear image order {}", linear.group().order());
            println!("projective image order {}", proj.image.group().order());
            println!("direct-sum projective image order {}", sum.image.group().order());
            Ok(ExitCode::SUCCESS)
        }
        RepalgCommand::Iso(args) => {
            let (_, r) = tensor_directsum_image_iso(&reps_of(&args)?)?;
            let check = Check::holds(
                "projective images of direct sum and tensor product are isomorphic",
                r.ok(),
                format!("orders {} and {}", r.sum_image_order, r.tensor_image_order),
            );
            emit(&checks_report("repalg", &reps_params(&args), vec![check], &cfg), None)
        }
        RepalgCommand::Scalar { q, sampling } => {
            let cfg = sampling.config();
            let f = field_of_order(q)?;
            let checks = [(2, 2), (2, 3), (3, 3)]
                .into_iter()
                .map(|dims| {
                    let r = scalar_detection(&f, dims, cfg.samples, cfg.seed);
                    Check::holds(
                        format!("Kronecker product is scalar only for scalar factors, {}x{}", dims.0, dims.1),
                        r.violations == 0,
                        format!("{} pairs, {} scalar products", r.pairs, r.scalar_products),
                    )
                })
                .collect();
            emit(&checks_report("repalg", &[("q", q.to_string())], checks, &cfg), None)
        }
        RepalgCommand::Pair(args) => {
            let case = args.case();
            let inst = case.build()?;
            let checks = pair_group_checks(&inst.block, &inst.pi, &subgroup_shapes(&inst)?)?;
            emit(&checks_report("repalg", &case.params(), checks, &cfg), None)
        }
        RepalgCommand::Split(args) => {
            let case = args.case();
            let inst = case.build()?;
            let r = induced_split_check(&inst.block, Some(&inst.pi))?;
            println!("verdict {:?}", r.verdict);
            if let Some(t) = &r.transversal {
                let g = inst.block.group();
                let labels: Vec<String> = t.iter().map(|&x| g.label(x)).collect();
                println!("complement {}", labels.join(", "));
            }
            if let Some(b) = r.brute_force {
                println!("direct search agrees: {}", b == r.transversal.is_some());
            }
            Ok(if r.consistent() { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        RepalgCommand::Pglpsl { p, seed } => {
            let f = field_of_order(p)?;
            let r = pgl_psl_analysis(&f, seed)?;
            let cfg = RunConfig { seed, samples: 0 };
            let params = [("p", p.to_string()), ("witness", r.witness.clone())];
            emit(&checks_report("repalg", &params, r.checks, &cfg), None)
        }
    }
}

fn main() -> ExitCode {
    // Exit code 2 is reserved for falsified statements, so usage errors map to 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context as _, Result};
use apolar_core::apolarity::*;
use apolar_core::betti::{degree_from_betti, koszul_betti, quotient_dims, GradedIdealOracle, DEFAULT_BUDGET};
use apolar_core::exact::DEFAULT_PRIME;
use apolar_core::intersect::{vsp_invariants, VspConfig};
use apolar_core::poly::parse_poly;
use apolar_core::spinor::*;
use apolar_core::sylvester::{binary_apolar_generators, decompose_binary, DecompositionStatus};
use apolar_core::{ExactMatrix, Field, MPoly, Monomial, RingKind, Scalar};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::report::{Provenance, Report};
use crate::reproduce::{self, QUADRICS_SHA256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "apolar", version, about = "Exact apolarity, Betti tables, spinor geometry and intersection numbers")]
pub struct Cli {
    /// `q`, `gfp:<p>`, or `gfp` for GF(--prime).
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Prime used when no field is given.
    #[arg(long, global = true, env = "APOLAR_DEFAULT_PRIME")]
    pub prime: Option<u64>,
    /// Largest strand matrix (in entries) a Betti computation may build.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// Polynomial and point arguments are inline text, or `@path` to read a file.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bases of the graded pieces of the apolar ideal.
    ApolarIdeal {
        form: String,
        /// Only this degree.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Hilbert function of the apolar ring.
    Hilbert {
        form: Option<String>,
        /// A seeded random cubic in n+1 variables, e.g. `n=4`.
        #[arg(long, value_name = "n=N")]
        random_cubic: Option<String>,
    },
    /// A cubic from its apolar quadrics, or from a random spinor section.
    DualCubic {
        /// Dual generators separated by `;`; without them a section is drawn.
        #[arg(long)]
        generators: Option<String>,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Power-sum decomposition of a binary form.
    DecomposeBinary {
        form: String,
        /// An apolar form to split instead of the least-degree generator.
        #[arg(long)]
        hint: Option<String>,
    },
    /// Whether points are apolar to a form, and the coefficients if so.
    VerifyPowersum {
        form: String,
        /// `a0,a1,...;b0,b1,...`
        #[arg(long)]
        points: String,
        #[arg(long)]
        span_degree: Option<u32>,
    },
    /// Graded Betti numbers of an apolar ring, a point set, or an ideal.
    Betti {
        #[arg(long, conflicts_with_all = ["points", "ideal"])]
        form: Option<String>,
        #[arg(long, conflicts_with = "ideal")]
        points: Option<String>,
        /// Generators separated by `;`.
        #[arg(long)]
        ideal: Option<String>,
        /// Variable count for `--ideal`.
        #[arg(long)]
        nvars: Option<usize>,
        /// Number of columns (homological degrees) to compute.
        #[arg(long)]
        columns: Option<usize>,
        /// Number of rows to compute.
        #[arg(long)]
        rows: Option<usize>,
        /// Also read off the degree, for a quotient of this codimension.
        #[arg(long)]
        codim: Option<usize>,
    },
    /// Sanity checks of the ten spinor quadrics.
    SpinorCheck {
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// A random codimension-11 linear section of the spinor variety.
    SpinorSection,
    /// The quadratic relation among the apolar quadrics of a cubic threefold.
    QuadraticRelation {
        form: Option<String>,
        /// Use a seeded general cubic threefold.
        #[arg(long)]
        random_cubic: bool,
    },
    /// Intersection numbers on the variety of lines; ends with the degree.
    VspInvariants,
    /// The acceptance checklist.
    ReproducePaper {
        /// Include wall times (the output is then not byte-deterministic).
        #[arg(long)]
        timings: bool,
    },
}

pub fn resolve_field(field: Option<&str>, prime: Option<u64>) -> Result<Field> {
    let prime = prime.unwrap_or(DEFAULT_PRIME);
    match field.map(|s| s.trim().to_ascii_lowercase()) {
        None => Ok(Field::prime(prime)?),
        Some(s) if s == "gfp" || s == "gf" => Ok(Field::prime(prime)?),
        Some(s) => Ok(s.parse()?),
    }
}

fn read_arg(text: &str) -> Result<String> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}")),
        None => Ok(text.to_string()),
    }
}

fn parse_form(text: &str, field: Field) -> Result<Form> {
    Ok(Form::parse(&read_arg(text)?, field, None)?)
}

fn parse_list(text: &str, field: Field, ring: RingKind, nvars: Option<usize>) -> Result<Vec<MPoly>> {
    read_arg(text)?
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Ok(parse_poly(s, field, ring, nvars)?))
        .collect()
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn point_text(p: &[Scalar]) -> String {
    format!("({})", strings(p).join(":"))
}

fn random_cubic_n(arg: &str) -> Result<usize> {
    let n = arg.trim().strip_prefix("n=").unwrap_or(arg.trim());
    n.parse().map_err(|_| anyhow!("expected n=N, found '{arg}'"))
}

pub fn run(cli: &Cli) -> Result<Report> {
    let field = resolve_field(cli.field.as_deref(), cli.prime)?;
    let name = command_name(&cli.command);
    let mut r = Report::new(name, field, cli.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::ApolarIdeal { form, degree } => {
            let f = parse_form(form, field)?;
            r.input("form", f.to_string());
            let degrees: Vec<u32> = match degree {
                Some(e) => vec![*e],
                None => (1..=f.d()).collect(),
            };
            for e in degrees {
                let basis = apolar_piece(&f, e)?;
                r.derived(&format!("perp_{e}.dim"), basis.len());
                r.derived(&format!("perp_{e}.basis"), strings(&basis));
            }
        }
        Command::Hilbert { form, random_cubic } => {
            let (f, expected) = match (form, random_cubic) {
                (Some(t), None) => (parse_form(t, field)?, None),
                (None, Some(arg)) => {
                    let n = random_cubic_n(arg)?;
                    (Form::random(field, n, 3, &mut rng), Some(generic_hilbert_function(n, 3)))
                }
                _ => bail!("give either a form or --random-cubic"),
            };
            r.input("form", f.to_string());
            let h = hilbert_function(&f)?;
            match expected {
                Some(e) => {
                    let prov = if e.values() == [1, 5, 5, 1] { Provenance::Stated } else { Provenance::Derived };
                    r.check("hilbert_function", h.to_string(), e.to_string(), prov);
                }
                None => r.derived("hilbert_function", h.to_string()),
            }
            r.certify("symmetric", h.is_symmetric(), Provenance::Derived);
        }
        Command::DualCubic { generators, n, degree } => match generators {
            Some(g) => {
                let gens = parse_list(g, field, RingKind::Dual, Some(n + 1))?;
                r.input("generators", strings(&gens));
                let f = dual_socle_generator(&gens, *n, *degree, field)?;
                r.derived("form", f.to_string());
                let kills = gens
                    .iter()
                    .map(|g| apolar_core::poly::diff_apply(g, f.poly()).map(|x| x.is_zero()))
                    .collect::<apolar_core::Result<Vec<bool>>>()?;
                r.certify("generators_annihilate", kills.iter().all(|&k| k), Provenance::Derived);
            }
            None => {
                let s = random_section(cli.seed, field)?;
                r.derived("section_attempts", s.attempts);
                r.check("section_hilbert", s.hilbert.to_string(), "(1,5,5,1,0)", Provenance::Stated);
                let c = dual_cubic_from_section(&s.forms)?;
                r.derived("cubic", c.form.to_string());
                r.check("cubic_hilbert", hilbert_function(&c.form)?.to_string(), "(1,5,5,1)", Provenance::Stated);
            }
        },
        Command::DecomposeBinary { form, hint } => {
            let f = parse_form(form, field)?;
            r.input("form", f.to_string());
            let g = binary_apolar_generators(&f)?;
            r.derived("generator_degrees", vec![g.deg_a, g.deg_b]);
            let hint = hint
                .as_deref()
                .map(|h| parse_poly(&read_arg(h)?, field, RingKind::Dual, Some(2)).map_err(anyhow::Error::from))
                .transpose()?;
            let dec = decompose_binary(&f, hint.as_ref())?;
            r.derived("generator", dec.generator.to_string());
            match &dec.status {
                DecompositionStatus::Exact => {
                    let roots = dec.roots.as_ref().expect("exact");
                    r.derived("summands", dec.summands());
                    r.derived("points", roots.points().iter().map(|p| point_text(p)).collect::<Vec<_>>());
                    r.derived("lambdas", strings(&dec.lambdas));
                    let back = Form::power_sum(roots, &dec.lambdas, f.d())?;
                    r.certify("round_trip", back == f, Provenance::Derived);
                }
                DecompositionStatus::GeneratorOnly(ob) => {
                    r.check("obstruction", ob.to_string(), "none", Provenance::Derived);
                }
            }
        }
        Command::VerifyPowersum { form, points, span_degree } => {
            let f = parse_form(form, field)?;
            let pts = PointSet::parse(&read_arg(points)?, field)?;
            r.input("form", f.to_string());
            r.input("points", pts.points().iter().map(|p| point_text(p)).collect::<Vec<_>>());
            let cert = is_apolar(&f, &pts)?;
            r.derived("ideal_dims", cert.ideal_dims.clone());
            if let Some(e) = cert.first_failure {
                r.derived("first_failure", e);
            }
            r.certify("apolar", cert.apolar, Provenance::Derived);
            match powersum_lambda(&f, &pts)? {
                PowerSumOutcome::Presentable { lambda, solution_dim } => {
                    r.derived("lambdas", strings(&lambda));
                    r.derived("solution_dim", solution_dim);
                    r.certify("presentable", true, Provenance::Derived);
                }
                PowerSumOutcome::NotPresentable => r.certify("presentable", false, Provenance::Derived),
            }
            if let Some(e) = span_degree {
                r.derived(&format!("span_dim_{e}"), gamma_span_dim(&f, *e, &pts)?);
            }
        }
        Command::Betti {
            form,
            points,
            ideal,
            nvars,
            columns,
            rows,
            codim,
        } => {
            let (oracle, cols0, rows0) = if let Some(t) = form {
                let f = parse_form(t, field)?;
                r.input("form", f.to_string());
                let (n, d) = (f.n(), f.d() as usize);
                (GradedIdealOracle::Apolar(f), n + 2, d + 1)
            } else if let Some(t) = points {
                let pts = PointSet::parse(&read_arg(t)?, field)?;
                r.input("points", pts.len());
                let n = pts.n();
                (GradedIdealOracle::Points(pts), n + 1, 3)
            } else if let Some(t) = ideal {
                let gens = parse_list(t, field, RingKind::Primal, *nvars)?;
                r.input("generators", strings(&gens));
                let nv = gens.first().map_or(1, MPoly::nvars);
                (GradedIdealOracle::generators(gens)?, nv, 3)
            } else {
                bail!("give one of --form, --points, --ideal");
            };
            let (c, rw) = (columns.unwrap_or(cols0), rows.unwrap_or(rows0));
            let table = koszul_betti(&oracle, c, rw, cli.budget)?.trimmed();
            r.derived("hilbert_function", quotient_dims(&oracle, (c + rw) as u32)?.to_string());
            r.derived("betti", table.to_string());
            if let Some(k) = codim {
                r.derived("degree", degree_from_betti(&table, *k)?.to_string());
            }
        }
        Command::SpinorCheck { samples } => {
            let q = spinor_quadrics(Field::Rational);
            let digest = format!("{:x}", Sha256::digest(q.canonical_text().as_bytes()));
            r.check("quadrics_sha256", digest, QUADRICS_SHA256, Provenance::Derived);
            let sum = q
                .plus
                .iter()
                .zip(&q.minus)
                .fold(MPoly::zero(RingKind::Dual, Field::Rational, 16), |acc, (a, b)| &acc + &(a * b));
            r.certify("sum_plus_times_minus_is_zero", sum.is_zero(), Provenance::Stated);
            let (mut on, mut max_on, mut off_nine) = (0, 0, 0);
            for _ in 0..*samples {
                let p = exp_point(&SkewMatrix5::random(field, &mut rng));
                on += on_spinor(&p)? as usize;
                max_on = max_on.max(clifford_matrix(&p).rank());
                let x = SpinorCoords::random(field, &mut rng);
                off_nine += (!on_spinor(&x)? && clifford_matrix(&x).rank() == 9) as usize;
            }
            r.check("exp_points_on_s", on, *samples, Provenance::Derived);
            r.certify("clifford_rank_on_s_at_most_8", max_on <= 8, Provenance::Stated);
            r.check("random_points_off_s_with_rank_9", off_nine, *samples, Provenance::Stated);
            let fiber = fiber_p7_check(field)?;
            r.derived("fiber_vanishing", fiber.vanishing.len());
            r.derived(
                "fiber_surviving",
                fiber.surviving.iter().map(|(n, k)| format!("{n} rank {k}")).collect::<Vec<_>>(),
            );
            r.certify("fiber_p7", fiber.holds(), Provenance::Stated);
        }
        Command::SpinorSection => {
            let s = random_section(cli.seed, field)?;
            let names = spinor_names();
            r.derived("attempts", s.attempts);
            r.derived("forms", s.forms.iter().map(|h| h.display_with(&names)).collect::<Vec<_>>());
            r.check("hilbert_function", s.hilbert.to_string(), "(1,5,5,1,0)", Provenance::Stated);
            let (table, deg) = spinor_degree(&s.forms, cli.budget)?;
            r.derived("betti", table.to_string());
            r.check("degree", deg.to_string(), "12", Provenance::Stated);
            let c = dual_cubic_from_section(&s.forms)?;
            r.derived("cubic", c.form.to_string());
        }
        Command::QuadraticRelation { form, random_cubic } => {
            let f = match (form, random_cubic) {
                (Some(t), false) => parse_form(t, field)?,
                (None, true) => random_general_form(field, 4, 3, 5, &mut rng)?.0,
                _ => bail!("give either a form or --random-cubic"),
            };
            r.input("form", f.to_string());
            let rel = quadratic_relation(&f)?;
            if *random_cubic {
                r.check("relations", rel.dim, 1, Provenance::Stated);
            } else {
                r.derived("relations", rel.dim);
            }
            if let Some((m, rank)) = &rel.unique {
                r.derived("relation", relation_text(m)?);
                if *random_cubic {
                    r.check("rank", *rank, 10, Provenance::Stated);
                } else {
                    r.derived("rank", *rank);
                }
            }
        }
        Command::VspInvariants => {
            let s = random_section(cli.seed, field)?;
            let (_, deg) = spinor_degree(&s.forms, cli.budget)?;
            r.derived("degree_s_from_betti", deg.to_string());
            let report = vsp_invariants(&VspConfig::standard(deg))?;
            for ring in &report.rings {
                r.derived(&format!("{}.dims", ring.name), ring.graded_dims.clone());
            }
            for c in &report.checks {
                r.judged(&c.name, c.found.clone(), c.expected.clone(), c.pass, Provenance::Stated);
            }
            if let Some(e) = &report.euler_s {
                r.check("e(S)", e.clone(), "16", Provenance::Stated);
            }
            r.pass &= report.passed();
            r.summary = report.render_text().lines().last().map(str::to_string);
        }
        Command::ReproducePaper { timings } => {
            if field == Field::Rational {
                bail!("the checklist draws general instances over a prime field");
            }
            let cx = reproduce::Context {
                field,
                seed: cli.seed,
                budget: cli.budget,
            };
            r.checklist = reproduce::run_all(&cx);
            r.pass = r.checklist.iter().all(|c| c.pass);
            r.timings = *timings;
            let failed = r.checklist.iter().filter(|c| !c.pass).count();
            r.summary = Some(format!("{} of {} criteria pass", r.checklist.len() - failed, r.checklist.len()));
        }
    }
    Ok(r)
}

/// `Σ M_ij q_i q_j` written in the names `q1..q10`.
fn relation_text(m: &ExactMatrix) -> Result<String> {
    let k = m.rows();
    let field = m.field();
    let mut terms = Vec::new();
    for i in 0..k {
        for j in i..k {
            let c = if i == j { m.get(i, i) } else { &m.get(i, j) + &m.get(j, i) };
            let mut e = vec![0u32; k];
            e[i] += 1;
            e[j] += 1;
            terms.push((Monomial::new(e), c));
        }
    }
    let p = MPoly::from_terms(RingKind::Primal, field, k, terms)?.monic();
    let names: Vec<String> = (1..=k).map(|i| format!("q{i}")).collect();
    Ok(p.display_with(&names))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::ApolarIdeal { .. } => "apolar-ideal",
        Command::Hilbert { .. } => "hilbert",
        Command::DualCubic { .. } => "dual-cubic",
        Command::DecomposeBinary { .. } => "decompose-binary",
        Command::VerifyPowersum { .. } => "verify-powersum",
        Command::Betti { .. } => "betti",
        Command::SpinorCheck { .. } => "spinor-check",
        Command::SpinorSection => "spinor-section",
        Command::QuadraticRelation { .. } => "quadratic-relation",
        Command::VspInvariants => "vsp-invariants",
        Command::ReproducePaper { .. } => "reproduce-paper",
    }
}

//! Seeded property suites over random instances, with a fault-injection
//! switch that perturbs one side of every check.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy::{Grade, Universe};
use crate::normed::{
    fsnorm_axiom_check, hausdorff_separate, AxiomTolerance, FSNorm, FSVectorPoint, PNorm, Separation, SoftNorm,
    VectorPoint,
};
use crate::real::{AlphaGrid, Cut};
use crate::soft::{FuzzySoftSet, ParameterSet, SoftMapping};
use crate::soft_real::FuzzySoftReal;
use crate::topology::{ft_check, FsTopology, GradeLattice};

/// Deterministic generator for every suite.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform grade on `{0, 1/steps, …, 1}`.
pub fn lattice_grade(rng: &mut impl Rng, steps: u32) -> Grade<f64> {
    let k = rng.gen_range(0..=steps);
    Grade::new(f64::from(k) / f64::from(steps)).expect("lattice grade")
}

/// Uniform grade on `{1/steps, …, 1}`.
pub fn positive_lattice_grade(rng: &mut impl Rng, steps: u32) -> f64 {
    f64::from(rng.gen_range(1..=steps)) / f64::from(steps)
}

pub fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn random_fss(rng: &mut impl Rng, params: &ParameterSet, universe: &Universe, steps: u32) -> FuzzySoftSet<f64> {
    FuzzySoftSet::from_fn(params.clone(), universe.clone(), |_, _| lattice_grade(rng, steps))
}

/// Non-empty subset of `params`, in the original order.
pub fn random_sub_params(rng: &mut impl Rng, params: &ParameterSet) -> ParameterSet {
    loop {
        let keep: Vec<usize> = (0..params.len()).filter(|_| rng.gen_bool(0.5)).collect();
        if !keep.is_empty() {
            return params.select(&keep).expect("positions in range");
        }
    }
}

/// Random `u: X → Y`, `p: E → E'` with sizes up to the given bounds.
pub fn random_mapping(rng: &mut impl Rng, max_objects: usize, max_params: usize) -> SoftMapping {
    let nx = rng.gen_range(1..=max_objects);
    let ny = rng.gen_range(1..=max_objects);
    let ne = rng.gen_range(1..=max_params);
    let nf = rng.gen_range(1..=max_params);
    let u = (0..nx).map(|_| rng.gen_range(0..ny)).collect();
    let p = (0..ne).map(|_| rng.gen_range(0..nf)).collect();
    SoftMapping::new(
        Universe::new(labels("x", nx)).expect("labels"),
        Universe::new(labels("y", ny)).expect("labels"),
        ParameterSet::new(labels("e", ne)).expect("labels"),
        ParameterSet::new(labels("f", nf)).expect("labels"),
        u,
        p,
    )
    .expect("valid mapping")
}

/// Triangular `(a, b, c)` with `a ≤ b ≤ c` in `[-span, span]`.
pub fn random_triangle(rng: &mut impl Rng, span: f64) -> (f64, f64, f64) {
    let mut v = [
        rng.gen_range(-span..=span),
        rng.gen_range(-span..=span),
        rng.gen_range(-span..=span),
    ];
    v.sort_by(f64::total_cmp);
    (v[0], v[1], v[2])
}

pub fn random_fs_real(
    rng: &mut impl Rng,
    params: &ParameterSet,
    grid: &AlphaGrid<f64>,
    span: f64,
) -> FuzzySoftReal<f64> {
    let abc: Vec<_> = (0..params.len()).map(|_| random_triangle(rng, span)).collect();
    FuzzySoftReal::triangular(params.clone(), grid.clone(), &abc).expect("ordered triangle")
}

pub fn random_vector(rng: &mut impl Rng, d: usize, span: f64) -> VectorPoint<f64> {
    VectorPoint::new((0..d).map(|_| rng.gen_range(-span..=span)).collect()).expect("finite")
}

/// Point with grades on `{0.05, 0.1, …, 1}`.
pub fn random_point(rng: &mut impl Rng, params: &ParameterSet, d: usize, span: f64) -> FSVectorPoint<f64> {
    let v = random_vector(rng, d, span);
    let lambda: Vec<f64> = (0..params.len()).map(|_| positive_lattice_grade(rng, 20)).collect();
    FSVectorPoint::new(v, params.clone(), &lambda).expect("positive grades")
}

/// Topology generated by up to `max_generators` random lattice-valued sets.
pub fn random_topology(
    rng: &mut impl Rng,
    params: &ParameterSet,
    universe: &Universe,
    lattice: &GradeLattice<f64>,
    max_generators: usize,
) -> FsTopology<f64> {
    let values = lattice.values();
    let n = rng.gen_range(1..=max_generators);
    let generators = (0..n)
        .map(|_| {
            FuzzySoftSet::from_fn(params.clone(), universe.clone(), |_, _| {
                *values.choose(rng).expect("non-empty")
            })
        })
        .collect();
    FsTopology::generated_by(params.clone(), universe.clone(), generators).expect("same universe")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Law {
    DeMorgan,
    MapLaws,
    Identities,
    NormAxioms,
    Slices,
    Hausdorff,
}

impl Law {
    pub const ALL: [Law; 6] = [
        Law::DeMorgan,
        Law::MapLaws,
        Law::Identities,
        Law::NormAxioms,
        Law::Slices,
        Law::Hausdorff,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::DeMorgan => "demorgan",
            Law::MapLaws => "maplaws",
            Law::Identities => "identities",
            Law::NormAxioms => "normaxioms",
            Law::Slices => "slices",
            Law::Hausdorff => "hausdorff",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Law::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::UnknownLaw(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ItemCount {
    pub checks: usize,
    pub violations: usize,
    pub inapplicable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub law: Law,
    pub seed: u64,
    pub cases: usize,
    pub checks: usize,
    pub violations: usize,
    pub inapplicable: usize,
    pub items: BTreeMap<String, ItemCount>,
    pub first_witness: Option<String>,
}

impl SuiteReport {
    fn new(law: Law, seed: u64) -> Self {
        SuiteReport {
            law,
            seed,
            cases: 0,
            checks: 0,
            violations: 0,
            inapplicable: 0,
            items: BTreeMap::new(),
            first_witness: None,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations == 0
    }

    fn check(&mut self, item: &str, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        let count = self.items.entry(item.to_string()).or_default();
        count.checks += 1;
        if !ok {
            count.violations += 1;
            self.violations += 1;
            if self.first_witness.is_none() {
                self.first_witness = Some(format!("case {}: {item}: {}", self.cases, witness()));
            }
        }
    }

    fn skip(&mut self, item: &str) {
        self.inapplicable += 1;
        self.items.entry(item.to_string()).or_default().inapplicable += 1;
    }
}

/// Options shared by the suites.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    pub count: usize,
    pub grid: AlphaGrid<f64>,
    /// Perturb one side of every check so the suite must report violations.
    pub fault: bool,
}

pub fn run(law: Law, opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut rng = rng(opts.seed);
    let mut report = SuiteReport::new(law, opts.seed);
    match law {
        Law::DeMorgan => demorgan(&mut rng, opts, &mut report)?,
        Law::MapLaws => maplaws(&mut rng, opts, &mut report)?,
        Law::Identities => identities(&mut rng, opts, &mut report)?,
        Law::NormAxioms => normaxioms(&mut rng, opts, &mut report)?,
        Law::Slices => slices(&mut rng, opts, &mut report)?,
        Law::Hausdorff => hausdorff(&mut rng, opts, &mut report)?,
    }
    Ok(report)
}

// raise the first grade to 1, or drop it to 0 when already 1
fn perturb(f: &FuzzySoftSet<f64>, fault: bool) -> FuzzySoftSet<f64> {
    if !fault {
        return f.clone();
    }
    let first = f.grade(0, 0);
    FuzzySoftSet::from_fn(f.params().clone(), f.universe().clone(), |e, x| match (e, x) {
        (0, 0) if first == Grade::one() => Grade::zero(),
        (0, 0) => Grade::one(),
        _ => f.grade(e, x),
    })
}

fn show(f: &FuzzySoftSet<f64>) -> String {
    let rows: Vec<String> = f
        .params()
        .labels()
        .iter()
        .enumerate()
        .map(|(e, l)| {
            let g: Vec<String> = f.row(e).iter().map(|g| g.value().to_string()).collect();
            format!("{l}: [{}]", g.join(", "))
        })
        .collect();
    format!("{{{}}}", rows.join("; "))
}

fn demorgan(rng: &mut impl Rng, opts: &SuiteOptions, report: &mut SuiteReport) -> Result<()> {
    let params = ParameterSet::new(labels("e", 4))?;
    let universe = Universe::new(labels("x", 5))?;
    for _ in 0..opts.count {
        let f = random_fss(rng, &params, &universe, 20);
        let g = random_fss(rng, &params, &universe, 20);
        let lhs = perturb(&f.union(&g)?.complement(), opts.fault);
        let rhs = f.complement().intersection(&g.complement())?;
        report.check("union-complement", lhs == rhs, || {
            format!("f = {}, g = {}", show(&f), show(&g))
        });
        let lhs = perturb(&f.intersection(&g)?.complement(), opts.fault);
        let rhs = f.complement().union(&g.complement())?;
        report.check("intersection-complement", lhs == rhs, || {
            format!("f = {}, g = {}", show(&f), show(&g))
        });
        report.cases += 1;
    }
    Ok(())
}

fn fold(
    sets: &[FuzzySoftSet<f64>],
    op: impl Fn(&FuzzySoftSet<f64>, &FuzzySoftSet<f64>) -> Result<FuzzySoftSet<f64>>,
) -> Result<FuzzySoftSet<f64>> {
    let mut acc = sets[0].clone();
    for s in &sets[1..] {
        acc = op(&acc, s)?;
    }
    Ok(acc)
}

fn maplaws(rng: &mut impl Rng, opts: &SuiteOptions, report: &mut SuiteReport) -> Result<()> {
    let fault = opts.fault;
    for _ in 0..opts.count {
        let h = random_mapping(rng, 4, 3);
        let (x, y) = (h.source_universe().clone(), h.target_universe().clone());
        let (e, f_params) = (h.source_params().clone(), h.target_params().clone());
        let image_params = f_params.select(&h.image_params())?;
        let a = random_sub_params(rng, &e);
        let fs: Vec<_> = (0..rng.gen_range(2..=3)).map(|_| random_fss(rng, &a, &x, 20)).collect();
        let gs: Vec<_> = (0..rng.gen_range(2..=3))
            .map(|_| random_fss(rng, &f_params, &y, 20))
            .collect();
        let w = || format!("u = {:?}, p = {:?}, A = {:?}", h.u(), h.p(), a.labels());

        let img_null = perturb(&h.image(&FuzzySoftSet::null(a.clone(), x.clone()))?, fault);
        report.check(
            "image-null",
            img_null == FuzzySoftSet::null(image_params.clone(), y.clone()),
            w,
        );
        let pre_null = perturb(&h.preimage(&FuzzySoftSet::null(f_params.clone(), y.clone()))?, fault);
        report.check("preimage-null", pre_null == FuzzySoftSet::null(e.clone(), x.clone()), w);

        let img_abs = perturb(&h.image(&FuzzySoftSet::absolute(e.clone(), x.clone()))?, fault);
        report.check(
            "image-absolute",
            img_abs.is_subset(&FuzzySoftSet::absolute(image_params.clone(), y.clone()))?,
            w,
        );
        let pre_abs = perturb(
            &h.preimage(&FuzzySoftSet::absolute(f_params.clone(), y.clone()))?,
            fault,
        );
        report.check(
            "preimage-absolute",
            pre_abs == FuzzySoftSet::absolute(e.clone(), x.clone()),
            w,
        );

        let images = fs.iter().map(|f| h.image(f)).collect::<Result<Vec<_>>>()?;
        let lhs = perturb(&h.image(&fold(&fs, |p, q| p.union(q))?)?, fault);
        report.check("image-union", lhs == fold(&images, |p, q| p.union(q))?, w);
        let lhs = perturb(&h.image(&fold(&fs, |p, q| p.intersection(q))?)?, fault);
        report.check(
            "image-intersection",
            lhs.is_subset(&fold(&images, |p, q| p.intersection(q))?)?,
            w,
        );

        let pres = gs.iter().map(|g| h.preimage(g)).collect::<Result<Vec<_>>>()?;
        let lhs = perturb(&h.preimage(&fold(&gs, |p, q| p.union(q))?)?, fault);
        report.check("preimage-union", lhs == fold(&pres, |p, q| p.union(q))?, w);
        let lhs = perturb(&h.preimage(&fold(&gs, |p, q| p.intersection(q))?)?, fault);
        report.check(
            "preimage-intersection",
            lhs == fold(&pres, |p, q| p.intersection(q))?,
            w,
        );

        let lhs = perturb(&h.preimage(&gs[0].complement())?, fault);
        report.check("preimage-complement", lhs == pres[0].complement(), w);

        // needs every y hit and every e' in p(E) reached from A
        let reached = h.image_params().iter().all(|&t| {
            h.p()
                .iter()
                .enumerate()
                .any(|(i, &pe)| pe == t && a.contains(e.label(i)))
        });
        if h.is_onto_objects() && reached {
            let lhs = perturb(&images[0].complement(), fault);
            report.check("image-complement", lhs.is_subset(&h.image(&fs[0].complement())?)?, w);
        } else {
            report.skip("image-complement");
        }
        report.cases += 1;
    }
    Ok(())
}

fn identities(rng: &mut impl Rng, opts: &SuiteOptions, report: &mut SuiteReport) -> Result<()> {
    let params = ParameterSet::new(labels("e", 3))?;
    let grid = &opts.grid;
    let crisp = |r: f64| FuzzySoftReal::crisp(r, params.clone(), grid.clone()).into_inner();
    let zero = crisp(if opts.fault { 1e-9 } else { 0.0 });
    let one = crisp(1.0);
    for _ in 0..opts.count {
        let a = random_fs_real(rng, &params, grid, 100.0);
        report.check("additive-identity", a.add(&zero)? == a, || {
            format!("{:?}", a.values()[0].support())
        });
        report.check("multiplicative-identity", a.mul(&one)? == a, || {
            format!("{:?}", a.values()[0].support())
        });
        let r = rng.gen_range(-100.0..=100.0);
        let x = rng.gen_range(-100.0..=100.0);
        report.check("crisp-abs", crisp(r).abs() == crisp(r.abs()), || format!("r = {r}"));
        report.check("crisp-product", crisp(r).mul(&crisp(x))? == crisp(r * x), || {
            format!("r = {r}, x = {x}")
        });
        report.cases += 1;
    }
    Ok(())
}

/// Delegates to a norm but zeroes the slice at the first parameter.
struct ZeroFirstWeight<'a>(&'a FSNorm<f64>);

impl SoftNorm<f64> for ZeroFirstWeight<'_> {
    fn params(&self) -> &ParameterSet {
        self.0.params()
    }

    fn grid(&self) -> &AlphaGrid<f64> {
        self.0.grid()
    }

    fn cut(&self, e: usize, level: usize, x: &VectorPoint<f64>) -> Cut<f64> {
        if e == 0 {
            Cut { lower: 0.0, upper: 0.0 }
        } else {
            self.0.cut(e, level, x)
        }
    }
}

fn normaxioms(rng: &mut impl Rng, opts: &SuiteOptions, report: &mut SuiteReport) -> Result<()> {
    let params = ParameterSet::new(labels("e", 3))?;
    let weights = (0..3).map(|_| rng.gen_range(0.5..2.0)).collect();
    let norm = FSNorm::new(params.clone(), opts.grid.clone(), PNorm::Two, weights)?;
    let samples: Vec<_> = (0..opts.count)
        .map(|i| {
            // keep a few exact zeros in the mix
            let x = if i % 50 == 0 {
                FSVectorPoint::crisp(VectorPoint::zero(3), params.clone())
            } else {
                random_point(rng, &params, 3, 100.0)
            };
            let y = random_point(rng, &params, 3, 100.0);
            (x, y, rng.gen_range(-10.0..=10.0))
        })
        .collect();
    let result = if opts.fault {
        fsnorm_axiom_check(&ZeroFirstWeight(&norm), &samples, AxiomTolerance::default())?
    } else {
        fsnorm_axiom_check(&norm, &samples, AxiomTolerance::default())?
    };
    report.cases = samples.len();
    for axiom in ["zero-iff-zero", "homogeneity", "triangle"] {
        report.items.insert(
            axiom.to_string(),
            ItemCount {
                checks: samples.len(),
                ..ItemCount::default()
            },
        );
    }
    report.checks = 3 * samples.len();
    for v in &result.violations {
        let count = report.items.entry(v.axiom.name().to_string()).or_default();
        count.violations += 1;
    }
    // one sample can break one axiom several times (per slice); count samples
    let mut seen = std::collections::BTreeSet::new();
    for v in &result.violations {
        seen.insert((v.sample, v.axiom.name()));
    }
    report.violations = seen.len();
    report.first_witness = result
        .violations
        .first()
        .map(|v| format!("sample {}: {}: {}", v.sample, v.axiom.name(), v.detail));
    Ok(())
}

fn slices(rng: &mut impl Rng, opts: &SuiteOptions, report: &mut SuiteReport) -> Result<()> {
    let params = ParameterSet::new(labels("e", 2))?;
    let universe = Universe::new(labels("x", 2))?;
    let lattice = GradeLattice::new(&[0.0, 0.5, 1.0])?;
    for _ in 0..opts.count {
        let t = random_topology(rng, &params, &universe, &lattice, 4);
        report.check("topology", t.verdict().is_ok(), || t.verdict().to_string());
        for (e, label) in params.labels().iter().enumerate() {
            let mut rows: Vec<_> = t.opens().iter().map(|o| o.row_set(e)).collect();
            if opts.fault {
                rows.retain(|r| r.grades().iter().any(|g| *g != Grade::one()));
            }
            let verdict = ft_check(&universe, &rows);
            report.check(&format!("slice {label}"), verdict.is_ok(), || {
                format!("{} opens: {verdict}", t.opens().len())
            });
        }
        report.cases += 1;
    }
    Ok(())
}

fn hausdorff(rng: &mut impl Rng, opts: &SuiteOptions, report: &mut SuiteReport) -> Result<()> {
    let params = ParameterSet::new(labels("e", 2))?;
    let norm = FSNorm::uniform(params.clone(), opts.grid.clone(), PNorm::Two);
    for _ in 0..opts.count {
        let x = random_point(rng, &params, 2, 10.0);
        let y = loop {
            let y = random_point(rng, &params, 2, 10.0);
            if y.is_distinct(&x) {
                break y;
            }
        };
        let mut s: Separation<f64> = hausdorff_separate(&norm, &x, &y)?;
        if opts.fault {
            s.u.radius *= 2.0;
            s.v.radius *= 2.0;
        }
        let w = || format!("x = {:?}, y = {:?}", x.coords(), y.coords());
        report.check("centers", s.u.has_member(&x)? && s.v.has_member(&y)?, w);
        let check = s.validate()?;
        report.check("disjoint", check.overlaps.is_empty(), || {
            format!("{}: overlap at {:?}", w(), check.overlaps[0].coords())
        });
        report.cases += 1;
    }
    Ok(())
}

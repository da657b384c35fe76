//! Parameter sweeps, the datasets behind the figures, and the oracle cross-check suite.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::alternate::{alternate_a_for_y, alternate_choi, alternate_known_point};
use crate::analysis::distance::{distance_report, DiamondOptions, DistanceReport};
use crate::analysis::models::{ad_choi, depolarising_choi, pbt_ad_closed_form, xi, AdConvention};
use crate::error::{domain, PbtError, Result};
use crate::format::sig;
use crate::kraus::{protocol_kraus, real_trace};
use crate::oracle::{build_povm, oracle_choi_with};
use crate::pbt_choi::{pbt_choi, ChoiMatrix};
use crate::resource::{make_family, random_symmetric_resource, ReducedResource, ResourceFamily};

/// Inclusive grid `start, start + step, …, ≤ stop`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return domain("grid bounds must be finite");
        }
        if step <= 0.0 {
            return domain(format!("grid step must be positive, got {step}"));
        }
        if stop < start {
            return domain(format!("empty grid: stop {stop} < start {start}"));
        }
        Ok(Grid { start, stop, step })
    }

    pub fn unit(step: f64) -> Result<Self> {
        Grid::new(0.0, 1.0, step)
    }

    pub fn points(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|k| {
                let v = self.start + k as f64 * self.step;
                ((v * 1e12).round() / 1e12).min(self.stop)
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = PbtError;

    /// `start:stop:step`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return domain(format!("grid `{s}` is not start:stop:step"));
        }
        let mut v = [0.0; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p.trim().parse().map_err(|_| PbtError::Domain(format!("bad number `{p}` in grid `{s}`")))?;
        }
        Grid::new(v[0], v[1], v[2])
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", sig(self.start), sig(self.stop), sig(self.step))
    }
}

/// Which resource is swept against the amplitude-damping target `R′(p₀)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepFamily {
    /// `R(p₁)^{⊗N}`, swept over `p₁`.
    Choi,
    /// `R_new(a)^{⊗N}`, swept over `a`.
    Alternate,
}

impl SweepFamily {
    pub fn simulated(self, n: usize, param: f64) -> Result<ChoiMatrix> {
        match self {
            SweepFamily::Choi => pbt_ad_closed_form(n, param),
            SweepFamily::Alternate => alternate_choi(n, param),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub trace_norm: f64,
    pub diamond_lower: f64,
    pub diamond_upper: f64,
    pub diamond_numeric: f64,
}

impl SweepRow {
    fn new(param: f64, r: DistanceReport) -> Self {
        SweepRow {
            param,
            trace_norm: r.trace_norm,
            diamond_lower: r.bounds.lower,
            diamond_upper: r.bounds.upper,
            diamond_numeric: r.numeric,
        }
    }

    /// `trace ≤ numeric ≤ upper` up to `slack`.
    pub fn sandwiched(&self, slack: f64) -> bool {
        self.trace_norm <= self.diamond_numeric + slack && self.diamond_numeric <= self.diamond_upper + slack
    }

    fn fields(&self) -> [String; 5] {
        [
            sig(self.param),
            sig(self.trace_norm),
            sig(self.diamond_lower),
            sig(self.diamond_upper),
            sig(self.diamond_numeric),
        ]
    }
}

pub const SWEEP_HEADER: [&str; 5] = ["param", "trace_norm", "diamond_lower", "diamond_upper", "diamond_numeric"];

pub fn sweep_point(n: usize, p0: f64, family: SweepFamily, param: f64, opts: &DiamondOptions) -> Result<SweepRow> {
    let target = ad_choi(p0, AdConvention::PlusBell)?;
    let sim = family.simulated(n, param)?;
    Ok(SweepRow::new(param, distance_report(&sim, &target, opts)?))
}

/// One row per grid point, in grid order.
pub fn ad_sweep(n: usize, p0: f64, family: SweepFamily, grid: &Grid, opts: &DiamondOptions) -> Result<Vec<SweepRow>> {
    xi(n)?;
    ad_choi(p0, AdConvention::PlusBell)?;
    grid.points().into_par_iter().map(|p| sweep_point(n, p0, family, p, opts)).collect()
}

pub fn write_sweep_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush()?;
    Ok(())
}

/// Panels of figure 4: how `p₁` and `a` follow `p₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComparisonPanel {
    /// `p₁ = (p₀ − ξ)/(1 − ξ)` and `a` with `x(a) − y(a) = (1 − p₀)/2`.
    KnownPoints,
    /// `p₁ = (2p₀ − ξ)/(2 − ξ)` and `a` with `y(a) = p₀/2`.
    NearOptimal,
}

impl ComparisonPanel {
    pub fn first_p0(self, xi_n: f64) -> f64 {
        match self {
            ComparisonPanel::KnownPoints => xi_n,
            ComparisonPanel::NearOptimal => xi_n / 2.0,
        }
    }

    pub fn p1(self, xi_n: f64, p0: f64) -> f64 {
        let p = match self {
            ComparisonPanel::KnownPoints => (p0 - xi_n) / (1.0 - xi_n),
            ComparisonPanel::NearOptimal => (2.0 * p0 - xi_n) / (2.0 - xi_n),
        };
        p.clamp(0.0, 1.0)
    }

    pub fn a(self, n: usize, p0: f64) -> Result<f64> {
        let found = match self {
            ComparisonPanel::KnownPoints => alternate_known_point(n, p0)?.map(|k| k.a_known),
            ComparisonPanel::NearOptimal => alternate_a_for_y(n, p0 / 2.0)?,
        };
        found.ok_or_else(|| PbtError::Domain(format!("no alternate parameter for p0 = {p0} at N = {n}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComparisonRow {
    pub p0: f64,
    pub choi: SweepRow,
    pub alternate: SweepRow,
}

pub const COMPARISON_HEADER: [&str; 11] = [
    "p0",
    "choi_p1",
    "choi_trace_norm",
    "choi_diamond_lower",
    "choi_diamond_upper",
    "choi_diamond_numeric",
    "alt_a",
    "alt_trace_norm",
    "alt_diamond_lower",
    "alt_diamond_upper",
    "alt_diamond_numeric",
];

/// Choi resource against the alternate resource along `p₀`, starting where `p₁ ≥ 0`.
pub fn comparison(n: usize, panel: ComparisonPanel, step: f64, opts: &DiamondOptions) -> Result<Vec<ComparisonRow>> {
    let x = xi(n)?;
    let grid = Grid::new(panel.first_p0(x), 1.0, step)?;
    grid.points()
        .into_par_iter()
        .map(|p0| {
            let choi = sweep_point(n, p0, SweepFamily::Choi, panel.p1(x, p0), opts)?;
            let alternate = sweep_point(n, p0, SweepFamily::Alternate, panel.a(n, p0)?, opts)?;
            Ok(ComparisonRow { p0, choi, alternate })
        })
        .collect()
}

pub fn write_comparison_csv<W: Write>(out: W, rows: &[ComparisonRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COMPARISON_HEADER)?;
    for row in rows {
        let mut rec = vec![sig(row.p0)];
        rec.extend(row.choi.fields());
        rec.extend(row.alternate.fields());
        w.write_record(rec)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub enum FigureData {
    Sweep { n: usize, p0: f64, family: SweepFamily, rows: Vec<SweepRow> },
    Comparison { n: usize, panel: ComparisonPanel, rows: Vec<ComparisonRow> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FigureTable {
    pub file_name: String,
    pub data: FigureData,
}

impl FigureTable {
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        match &self.data {
            FigureData::Sweep { rows, .. } => write_sweep_csv(&mut buf, rows)?,
            FigureData::Comparison { rows, .. } => write_comparison_csv(&mut buf, rows)?,
        }
        Ok(buf)
    }

    /// All sweep rows of the table, whichever shape it has.
    pub fn sweep_rows(&self) -> Vec<SweepRow> {
        match &self.data {
            FigureData::Sweep { rows, .. } => rows.clone(),
            FigureData::Comparison { rows, .. } => rows.iter().flat_map(|r| [r.choi, r.alternate]).collect(),
        }
    }
}

pub const FIGURE_PORTS: usize = 4;
pub const COMPARISON_PORTS: usize = 6;

fn sweep_table(prefix: &str, family: SweepFamily, p0: f64, step: f64, opts: &DiamondOptions) -> Result<FigureTable> {
    let rows = ad_sweep(FIGURE_PORTS, p0, family, &Grid::unit(step)?, opts)?;
    Ok(FigureTable {
        file_name: format!("{prefix}_p0_{}.csv", sig(p0)),
        data: FigureData::Sweep { n: FIGURE_PORTS, p0, family, rows },
    })
}

/// Tables behind figure `id` (1 to 4), sampled with grid spacing `step`.
pub fn figure(id: u32, step: f64, opts: &DiamondOptions) -> Result<Vec<FigureTable>> {
    let sweeps = |prefix: &str, family, p0s: [f64; 2]| {
        p0s.iter().map(|&p0| sweep_table(prefix, family, p0, step, opts)).collect::<Result<Vec<_>>>()
    };
    match id {
        1 => sweeps("fig1", SweepFamily::Choi, [0.36, 0.7]),
        2 => sweeps("fig2", SweepFamily::Choi, [0.85, 0.95]),
        3 => sweeps("fig3", SweepFamily::Alternate, [0.36, 0.7]),
        4 => [("fig4_left.csv", ComparisonPanel::KnownPoints), ("fig4_right.csv", ComparisonPanel::NearOptimal)]
            .into_iter()
            .map(|(name, panel)| {
                Ok(FigureTable {
                    file_name: name.into(),
                    data: FigureData::Comparison {
                        n: COMPARISON_PORTS,
                        panel,
                        rows: comparison(COMPARISON_PORTS, panel, step, opts)?,
                    },
                })
            })
            .collect(),
        _ => domain(format!("unknown figure {id}; expected 1 to 4")),
    }
}

/// Deviations for one resource in the cross-check suite.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyLine {
    pub n: usize,
    pub resource: String,
    /// Spin-basis pipeline against the dense oracle.
    pub oracle: f64,
    /// Protocol Kraus operators against the pipeline.
    pub kraus: f64,
    /// `|Tr Λ(π) − 1|` from the Kraus route.
    pub trace: f64,
    /// Closed form for the family, when there is one.
    pub closed_form: Option<f64>,
}

impl VerifyLine {
    pub fn worst(&self) -> f64 {
        self.oracle.max(self.kraus).max(self.trace).max(self.closed_form.unwrap_or(0.0))
    }
}

impl fmt::Display for VerifyLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={} {:<16} oracle={} kraus={} trace={}",
            self.n,
            self.resource,
            sig_short(self.oracle),
            sig_short(self.kraus),
            sig_short(self.trace)
        )?;
        if let Some(c) = self.closed_form {
            write!(f, " closed_form={}", sig_short(c))?;
        }
        Ok(())
    }
}

fn sig_short(x: f64) -> String {
    crate::format::sig_digits(x, 3)
}

pub const VERIFY_MAX_PORTS: usize = 8;
pub const VERIFY_RANDOM_MAX_PORTS: usize = 4;
pub const VERIFY_TOL: f64 = 1e-10;

/// Named cases of the suite at `n` ports.
pub fn verify_cases(n: usize, random: usize, seed: u64) -> Result<Vec<(String, ReducedResource, Option<ChoiMatrix>)>> {
    let mut cases =
        vec![("bell".to_string(), make_family(&ResourceFamily::Bell, n)?, Some(depolarising_choi(xi(n)?)?))];
    for p in [0.0, 0.3, 0.7, 1.0] {
        cases.push((
            format!("ad_choi({})", sig(p)),
            make_family(&ResourceFamily::AdChoi(p), n)?,
            Some(pbt_ad_closed_form(n, p)?),
        ));
    }
    // the x, y, z sums are parametrised with a and 1 − a exchanged relative to the port state
    for a in [0.1, 0.5, 0.9] {
        let closed = alternate_choi(n, 1.0 - a)?;
        cases.push((format!("alternate({})", sig(a)), make_family(&ResourceFamily::Alternate(a), n)?, Some(closed)));
    }
    if n <= VERIFY_RANDOM_MAX_PORTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        for k in 0..random {
            cases.push((format!("random#{k}"), random_symmetric_resource(n, &mut rng)?, None));
        }
    }
    Ok(cases)
}

/// Pipeline, dense oracle, protocol Kraus operators and closed forms for `n = 2..=max_ports`.
pub fn verify_suite(max_ports: usize, random: usize, seed: u64) -> Result<Vec<VerifyLine>> {
    if !(2..=VERIFY_MAX_PORTS).contains(&max_ports) {
        return domain(format!("--max-ports must be in 2..={VERIFY_MAX_PORTS}, got {max_ports}"));
    }
    let per_n: Vec<Vec<VerifyLine>> = (2..=max_ports)
        .into_par_iter()
        .map(|n| {
            let povm = build_povm(n)?;
            let kraus = protocol_kraus(n)?;
            verify_cases(n, random, seed)?
                .into_iter()
                .map(|(name, res, closed)| {
                    let pipeline = pbt_choi(&res)?;
                    let via_kraus = kraus.apply(&res)?;
                    Ok(VerifyLine {
                        n,
                        resource: name,
                        oracle: pipeline.max_abs_diff(&oracle_choi_with(&povm, &res)?),
                        kraus: pipeline.max_abs_diff(&via_kraus),
                        trace: (real_trace(via_kraus.matrix()) - 1.0).abs(),
                        closed_form: closed.map(|c| pipeline.max_abs_diff(&c)),
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(per_n.into_iter().flatten().collect())
}

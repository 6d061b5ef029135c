use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use berezin_lab::cplane::{densify_polygon, DEFAULT_MAX_PAIRS, DEFAULT_T_GRID};
use berezin_lab::io::{render_svg, write_csv_to, Report, SvgOptions};
use berezin_lab::kernels::SpaceId;
use berezin_lab::numrange::{default_contains_tol, numerical_range_fill, SupportTable, CONTAINS_DIRECTIONS};
use berezin_lab::parse::parse_matrix;
use berezin_lab::unitorbit::OrbitGrid;
use berezin_lab::{
    classify_convexity, convex_hull, convexity_report, convexity_report_default, elliptic_params, haar_orbit_cloud,
    hausdorff, numerical_range_cloud, orbit_cloud_2x2, sample_range, CMatrix, CPoint, PointCloud, SamplingGrid,
    SymbolSpec,
};
use berezin_lab::berezin::RadialSpacing;
use serde_json::json;

use crate::{presets, Common, Format, NumrangeArgs, OrbitArgs, RangeArgs, Space, Spacing, VerifyArgs};
use crate::{EXIT_CONFIG, EXIT_NUMERICAL, EXIT_VERIFY};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Lib(#[from] berezin_lab::Error),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_numerical() => EXIT_NUMERICAL,
            _ => EXIT_CONFIG,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// What a command hands to [`emit`].
struct Output<'a> {
    report: Report,
    cloud: Option<&'a PointCloud>,
    hull: Option<Vec<CPoint>>,
    svg: SvgOptions,
}

fn write_target(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|source| CliError::Write {
            path: p.display().to_string(),
            source,
        }),
        None => io::stdout().write_all(bytes).map_err(|source| CliError::Write {
            path: "standard output".into(),
            source,
        }),
    }
}

fn emit(common: &Common, format: Format, mut out: Output, started: Instant) -> CliResult<()> {
    if common.timing {
        out.report.timing_seconds = Some(started.elapsed().as_secs_f64());
    }
    let json = out.report.to_json()?;
    let target = common.output.as_deref();
    match format {
        Format::Json => write_target(target, json.as_bytes())?,
        Format::Csv | Format::Svg => {
            let cloud = out
                .cloud
                .ok_or_else(|| CliError::Config(format!("this command has no point cloud to write as {format:?}")))?;
            let bytes = if format == Format::Csv {
                let mut buf = Vec::new();
                write_csv_to(cloud, &mut buf)?;
                buf
            } else {
                render_svg(cloud, out.hull.as_deref(), &out.svg).into_bytes()
            };
            write_target(target, &bytes)?;
        }
    }
    if let Some(path) = &common.report {
        write_target(Some(path), json.as_bytes())?;
    }
    Ok(())
}

fn space_id(s: Space) -> SpaceId {
    match s {
        Space::Fock => SpaceId::Fock,
        Space::Dirichlet => SpaceId::Dirichlet,
    }
}

fn read_matrix(arg: &str) -> CliResult<CMatrix> {
    let path = Path::new(arg);
    let text = if !arg.contains(';') && path.is_file() {
        fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read matrix file {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    Ok(parse_matrix(&text)?)
}

fn positive_tol(tol: Option<f64>) -> CliResult<Option<f64>> {
    match tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => Err(CliError::Config(format!("--tol must be positive, got {t}"))),
        t => Ok(t),
    }
}

/// `range` and `convexity`.
pub fn range(a: RangeArgs, with_convexity: bool) -> CliResult<u8> {
    let started = Instant::now();
    let preset = match &a.preset {
        Some(name) => Some(presets::find(name).ok_or_else(|| {
            CliError::Config(format!("unknown preset `{name}`; choose one of {}", presets::names().join(", ")))
        })?),
        None => None,
    };
    let space = a
        .space
        .map(space_id)
        .or(preset.map(|p| p.space))
        .ok_or_else(|| CliError::Config("--space is required without --preset".into()))?;
    let symbol_text = a
        .symbol
        .clone()
        .or(preset.map(|p| p.symbol.to_string()))
        .ok_or_else(|| CliError::Config("--symbol is required without --preset".into()))?;
    let symbol: SymbolSpec = symbol_text.parse()?;
    let tol = positive_tol(a.tol)?;

    let mut grid = SamplingGrid::default_for(space);
    if let Some((n_r, n_theta)) = preset.and_then(|p| p.grid) {
        grid.n_r = n_r;
        grid.n_theta = n_theta;
    }
    if let Some(n) = a.n_r {
        grid.n_r = n;
    }
    if let Some(n) = a.n_theta {
        grid.n_theta = n;
    }
    if let Some(r) = a.r_max.or(preset.and_then(|p| p.r_max)) {
        grid.r_max = r;
    }
    if let Some(s) = a.r_spacing {
        grid.r_spacing = match s {
            Spacing::Uniform => RadialSpacing::Uniform,
            Spacing::Tanh => RadialSpacing::TanhClustered,
        };
    }
    grid.validate_for(space)?;
    symbol.validate_for(space)?;

    let mut cloud = sample_range(space, &symbol, &grid)?;
    cloud.set_meta("seed", a.seed);
    if let Some(p) = preset {
        cloud.set_meta("preset", p.name);
    }
    let class = classify_convexity(space, &symbol)?;

    let mut config = BTreeMap::new();
    config.insert("space".to_string(), space.name().to_string());
    config.insert("symbol".to_string(), symbol.to_string());
    config.insert("n_r".to_string(), grid.n_r.to_string());
    config.insert("n_theta".to_string(), grid.n_theta.to_string());
    config.insert("r_max".to_string(), grid.r_max.to_string());
    config.insert("r_spacing".to_string(), format!("{:?}", grid.r_spacing));
    config.insert("seed".to_string(), a.seed.to_string());
    if let Some(p) = preset {
        config.insert("preset".to_string(), p.name.to_string());
    }
    if let Some(t) = tol {
        config.insert("tol".to_string(), t.to_string());
    }

    let format = a.common.format.unwrap_or(Format::Csv);
    let mut results = json!({
        "n_points": cloud.len(),
        "classification": { "class": class.label(), "reason": class.reason() },
    });
    let mut summary = format!(
        "{}: {} points ({}, {}); theorem: {}",
        if with_convexity { "convexity" } else { "range" },
        cloud.len(),
        space.name(),
        symbol,
        class.label()
    );
    let mut hull = None;
    if with_convexity {
        let report = match tol {
            Some(t) => convexity_report(&cloud, t, DEFAULT_MAX_PAIRS, &DEFAULT_T_GRID)?,
            None => convexity_report_default(&cloud)?,
        };
        let agrees = class.verdict().map(|v| v == report.verdict);
        summary.push_str(&format!(
            "; detector: {:?} (max violation {:.3e}, tol {:.3e})",
            report.verdict, report.max_violation, report.tolerance
        ));
        results["convexity"] = serde_json::to_value(&report).map_err(berezin_lab::Error::from)?;
        results["agreement"] = json!(agrees);
        hull = Some(convex_hull(&cloud)?);
    }
    if format == Format::Json {
        results["cloud"] = serde_json::to_value(&cloud).map_err(berezin_lab::Error::from)?;
    }
    eprintln!("{summary}");

    let svg = SvgOptions {
        title: preset.map(|p| p.title.to_string()),
        view: preset.map(|p| p.view),
        connect: false,
    };
    let report = Report::new(if with_convexity { "convexity" } else { "range" }, config, results);
    emit(
        &a.common,
        format,
        Output {
            report,
            cloud: Some(&cloud),
            hull,
            svg,
        },
        started,
    )?;
    Ok(0)
}

pub fn numrange(a: NumrangeArgs) -> CliResult<u8> {
    let started = Instant::now();
    let t = read_matrix(&a.matrix)?;
    let cloud = numerical_range_cloud(&t, a.n_theta)?;
    let mut config = BTreeMap::new();
    config.insert("matrix".to_string(), t.to_string());
    config.insert("n_theta".to_string(), a.n_theta.to_string());
    let format = a.common.format.unwrap_or(Format::Csv);
    let mut results = json!({ "n": t.n(), "n_points": cloud.len() });
    if t.n() == 2 {
        let e = elliptic_params(&t)?;
        results["ellipse"] = serde_json::to_value(e).map_err(berezin_lab::Error::from)?;
        results["shape"] = json!(format!("{:?}", e.shape()));
        eprintln!(
            "numrange: {:?}, center {}, foci {} and {}, axes {} and {}",
            e.shape(),
            e.center,
            e.focus1,
            e.focus2,
            e.major_axis,
            e.minor_axis
        );
    } else {
        eprintln!("numrange: {} boundary points of W(T), T is {}x{}", cloud.len(), t.n(), t.n());
    }
    if format == Format::Json {
        results["cloud"] = serde_json::to_value(&cloud).map_err(berezin_lab::Error::from)?;
    }
    let svg = SvgOptions {
        connect: true,
        ..SvgOptions::default()
    };
    emit(
        &a.common,
        format,
        Output {
            report: Report::new("numrange", config, results),
            cloud: Some(&cloud),
            hull: None,
            svg,
        },
        started,
    )?;
    Ok(0)
}

pub fn orbit(a: OrbitArgs) -> CliResult<u8> {
    let started = Instant::now();
    let t = read_matrix(&a.matrix)?;
    let tol = positive_tol(a.tol)?.unwrap_or_else(|| default_contains_tol(&t));
    let mut config = BTreeMap::new();
    config.insert("matrix".to_string(), t.to_string());
    config.insert("tol".to_string(), tol.to_string());

    let haar = a.haar.or(if t.n() == 2 { None } else { Some(10_000) });
    let cloud = match haar {
        Some(n) => {
            config.insert("haar_samples".to_string(), n.to_string());
            config.insert("seed".to_string(), a.seed.to_string());
            haar_orbit_cloud(&t, n, a.seed)?
        }
        None => {
            config.insert("n_a".to_string(), a.n_a.to_string());
            config.insert("n_b".to_string(), a.n_b.to_string());
            orbit_cloud_2x2(&t, OrbitGrid { n_a: a.n_a, n_b: a.n_b })?
        }
    };

    let table = SupportTable::new(&t, CONTAINS_DIRECTIONS)?;
    let violations = cloud.points.iter().filter(|p| !table.contains(**p, tol)).count();
    let fill = numerical_range_fill(&t, 360, 30)?;
    let coverage = hausdorff(&cloud, &fill)?;
    let mut results = json!({
        "n_points": cloud.len(),
        "inclusion_violations": violations,
        "hausdorff_to_numerical_range_fill": coverage,
    });
    if t.n() == 2 && haar.is_none() {
        let e = elliptic_params(&t)?;
        let hull = convex_hull(&cloud)?;
        let step = 1e-3 * e.major_axis.max(f64::MIN_POSITIVE);
        let boundary = PointCloud::new(densify_polygon(&hull, step));
        let ellipse = PointCloud::new(e.boundary_polygon(1440));
        results["hausdorff_hull_to_ellipse"] = json!(hausdorff(&boundary, &ellipse)?);
    }
    eprintln!(
        "orbit: {} points, {} outside W(T) (tol {:.1e}), Hausdorff to W(T) samples {:.3e}",
        cloud.len(),
        violations,
        tol,
        coverage
    );
    let passed = violations == 0;
    let format = a.common.format.unwrap_or(Format::Csv);
    if format == Format::Json {
        results["cloud"] = serde_json::to_value(&cloud).map_err(berezin_lab::Error::from)?;
    }
    let mut report = Report::new("orbit", config, results);
    report.passed = Some(passed);
    emit(
        &a.common,
        format,
        Output {
            report,
            cloud: Some(&cloud),
            hull: None,
            svg: SvgOptions::default(),
        },
        started,
    )?;
    Ok(if passed { 0 } else { EXIT_VERIFY })
}

pub fn verify(a: VerifyArgs) -> CliResult<u8> {
    let started = Instant::now();
    let count = berezin_lab::verify::criterion_count() as u32;
    let ids: Vec<u32> = if a.only.is_empty() { (1..=count).collect() } else { a.only.clone() };
    if let Some(bad) = ids.iter().find(|id| !(1..=count).contains(*id)) {
        return Err(CliError::Config(format!("no criterion {bad}; valid numbers are 1 to {count}")));
    }
    let format = match a.common.format {
        None | Some(Format::Json) => Format::Json,
        Some(f) => return Err(CliError::Config(format!("verify writes JSON only, not {f:?}"))),
    };
    let quiet_stdout = a.common.output.is_none() && a.common.format.is_none();
    let mut results = Vec::new();
    for id in ids {
        let r = berezin_lab::verify::run_criterion(id).expect("id checked above");
        if quiet_stdout {
            println!("{}", r.line());
        } else {
            eprintln!("{}", r.line());
        }
        results.push(r);
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    let summary = format!("verify: {} passed, {} failed", results.len() - failed, failed);
    if quiet_stdout {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    let mut config = BTreeMap::new();
    config.insert(
        "criteria".to_string(),
        results.iter().map(|r| r.id.to_string()).collect::<Vec<_>>().join(","),
    );
    let mut report = Report::new(
        "verify",
        config,
        serde_json::to_value(&results).map_err(berezin_lab::Error::from)?,
    );
    report.passed = Some(failed == 0);
    if quiet_stdout {
        if let Some(path) = &a.common.report {
            if a.common.timing {
                report.timing_seconds = Some(started.elapsed().as_secs_f64());
            }
            write_target(Some(path), report.to_json()?.as_bytes())?;
        }
    } else {
        emit(
            &a.common,
            format,
            Output {
                report,
                cloud: None,
                hull: None,
                svg: SvgOptions::default(),
            },
            started,
        )?;
    }
    Ok(if failed == 0 { 0 } else { EXIT_VERIFY })
}

//! One function per subcommand. Each turns a parsed problem into a [`Report`].

use std::fmt;

use mfcat::cech::{cech_ext, CechOptions};
use mfcat::curved::verify as verify_factorization;
use mfcat::hochschild::{compare_hh, cy_symmetry_check, hh_cohomology, hh_homology, hh_via_diagonal, milnor_number};
use mfcat::homcx::ext;
use mfcat::stabilization::{koszul_stab, stabilize};
use mfcat::{external_tensor, Budget, Error, FreeModuleMap, ModulePresentation, Parity, QDim};
use serde_json::{json, Value};

use crate::problem::{self, InputError, ObjectSpec, Problem};
use crate::report::{self, dims, dims_cell, qdim, Report};

/// Why a command could not produce a report.
#[derive(Debug)]
pub enum Failure {
    Input(InputError),
    Engine(Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Engine(e) if e.is_budget() => 3,
            Failure::Engine(e) if e.is_mathematical() => 1,
            Failure::Engine(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            1 => "mathematical",
            3 => "budget",
            _ => "input",
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(e) => e.fmt(f),
            Failure::Engine(e) => e.fmt(f),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

pub type Outcome = std::result::Result<Report, Failure>;

/// Builds a named object, attributing any failure to the object.
fn object(p: &Problem, name: &str) -> std::result::Result<mfcat::MatrixFactorization, Failure> {
    p.build(name).map_err(|e| match e {
        Error::CurvatureMismatch { product, row, col, expected, found } => Failure::Engine(Error::CurvatureMismatch {
            product: format!("{product} of object `{name}`"),
            row,
            col,
            expected,
            found,
        }),
        other => Failure::Engine(other),
    })
}

pub fn verify(p: &Problem, _budget: &Budget) -> Outcome {
    let mut r = Report::new();
    let mut rows = Vec::new();
    let mut results = serde_json::Map::new();
    for (name, spec) in &p.objects {
        let checked = match spec {
            ObjectSpec::Explicit { p1, p0 } => verify_factorization(&p.w, p1, p0).map(|()| (p1.rows(), p1.cols())),
            _ => p.build(name).map(|f| (f.rank_even(), f.rank_odd())),
        };
        let (ranks, status, entry) = match checked {
            Ok(ranks) => (Some(ranks), "ok".to_string(), Value::Null),
            Err(Error::CurvatureMismatch { product, row, col, expected, found }) => {
                r.check(false);
                let msg = format!("{product}[{row}][{col}] = {found}, expected {expected}");
                let entry = json!({ "product": product, "row": row, "col": col, "expected": expected, "found": found });
                (None, msg, entry)
            }
            Err(e) => return Err(e.into()),
        };
        let ok = entry.is_null();
        let rank_cell = ranks.map_or("-".to_string(), |(e, o)| format!("({e}, {o})"));
        rows.push(vec![name.clone(), rank_cell, status]);
        let mut item = json!({ "ok": ok });
        if let Some((e, o)) = ranks {
            item["rank_even"] = json!(e);
            item["rank_odd"] = json!(o);
        }
        if !ok {
            item["offending_entry"] = entry;
        }
        results.insert(name.clone(), item);
    }
    r.line(format!("W = {}", p.ring.format(&p.w)));
    r.table(&["object", "ranks", "status"], &rows);
    r.set("objects", Value::Object(results));
    Ok(r)
}

pub fn stabilize_cmd(p: &Problem, budget: &Budget) -> Outcome {
    let module = match p.arg("module") {
        Some(v) => problem::module(&p.ring, v, &Problem::arg_path("module"))?,
        None => {
            // the residue field at the origin
            let vars: Vec<_> =
                (0..p.ring.nvars()).map(|i| p.ring.var(&p.ring.vars()[i]).expect("own variable")).collect();
            let rel = FreeModuleMap::from_rows_shaped(&p.ring, 1, vars.len(), vec![vars]).map_err(Failure::Engine)?;
            ModulePresentation::new(&p.ring, 1, rel)
        }
    };
    let Some(q1) = p.arg_matrix("q1")? else {
        return Err(InputError { path: "$.task_args".into(), msg: "missing field `q1`".into() }.into());
    };
    let f = stabilize(&module, &q1, &p.w, budget)?;
    let mut r = Report::new();
    r.text.push_str(&report::describe(&f));
    r.set("factorization", report::factorization(&f));
    if p.arg_bool("compare_koszul", false)? {
        let same = f == koszul_stab(&p.ring, &p.w)?;
        r.line(format!("matches koszul_stab: {same}"));
        r.set("matches_koszul_stab", json!(same));
        r.check(same);
    }
    Ok(r)
}

pub fn ext_cmd(p: &Problem, budget: &Budget) -> Outcome {
    let (s, t) = (p.object_name("source")?, p.object_name("target")?);
    let h = ext(&object(p, &s)?, &object(p, &t)?, budget)?;
    let mut r = Report::new();
    r.line(format!("Ext({s}, {t})"));
    let rows: Vec<Vec<String>> = [Parity::Even, Parity::Odd]
        .iter()
        .map(|&par| {
            let m = h.get(par);
            vec![
                par.to_string(),
                h.dims[par.index()].to_string(),
                m.generators().to_string(),
                m.relations().cols().to_string(),
            ]
        })
        .collect();
    r.table(&["parity", "dim_Q", "generators", "relations"], &rows);
    r.set("source", json!(s));
    r.set("target", json!(t));
    r.set("dims", dims(h.dims));
    Ok(r)
}

pub fn cech_ext_cmd(p: &Problem, budget: &Budget) -> Outcome {
    let (s, t) = (p.object_name("source")?, p.object_name("target")?);
    let (ps, pt) = (object(p, &s)?, object(p, &t)?);
    let cover = p.cover()?;
    let options = CechOptions {
        power: u32::try_from(p.arg_usize("power", 1)?).unwrap_or(u32::MAX),
        local: p.arg_bool("local", true)?,
    };
    let (cech, affine) = std::thread::scope(|sc| {
        let affine = sc.spawn(|| ext(&ps, &pt, budget));
        (cech_ext(&ps, &pt, &cover, options, budget), affine.join().expect("affine worker panicked"))
    });
    let (cech, affine) = (cech?, affine?.dims);
    let mut r = Report::new();
    let denominators: Vec<String> = cover.denominators().iter().map(|f| p.ring.format(f)).collect();
    r.line(format!("Ext({s}, {t}) over the cover {{{}}}", denominators.join(", ")));
    let rows: Vec<Vec<String>> = cech
        .local
        .iter()
        .map(|l| {
            let names: Vec<String> = l.intersection.iter().map(|&i| denominators[i].clone()).collect();
            vec![format!("{{{}}}", names.join(", ")), dims_cell(l.dims)]
        })
        .collect();
    if !rows.is_empty() {
        r.table(&["chart", "local dims"], &rows);
    }
    let agree = cech.dims() == affine;
    r.line(format!("total {}  affine {}  agree: {agree}", dims_cell(cech.dims()), dims_cell(affine)));
    r.check(agree);
    r.set("cover", json!(denominators));
    r.set("power", json!(options.power));
    r.set("dims", dims(cech.dims()));
    r.set("affine_dims", dims(affine));
    r.set("agrees_with_affine", json!(agree));
    let local: Vec<Value> =
        cech.local.iter().map(|l| json!({ "intersection": l.intersection, "dims": dims(l.dims) })).collect();
    r.set("local", json!(local));
    Ok(r)
}

pub fn coker_cmd(p: &Problem, budget: &Budget) -> Outcome {
    let name = p.object_name("object")?;
    let f = object(p, &name)?;
    let coker = f.cokernel()?;
    let (total, origin) = (coker.q_dimension(budget)?, coker.at_origin().q_dimension(budget)?);
    let mut r = Report::new();
    r.line(format!("coker(p1) of `{name}`: {} generators, {} relations", coker.generators(), coker.relations().cols()));
    r.table(
        &["module", "dim_Q"],
        &[vec!["coker".to_string(), total.to_string()], vec!["coker at origin".into(), origin.to_string()]],
    );
    r.set("object", json!(name));
    r.set("dim", qdim(total));
    r.set("dim_at_origin", qdim(origin));
    Ok(r)
}

pub fn dual_cmd(p: &Problem, _budget: &Budget) -> Outcome {
    let name = p.object_name("object")?;
    let f = object(p, &name)?;
    let d = f.dual();
    d.verify()?;
    let involution = d.dual() == f;
    let mut r = Report::new();
    r.text.push_str(&report::describe(&d));
    r.line(format!("dual(dual) = original: {involution}"));
    r.check(involution);
    r.set("object", json!(name));
    r.set("factorization", report::factorization(&d));
    r.set("involution", json!(involution));
    Ok(r)
}

pub fn tensor_cmd(p: &Problem, budget: &Budget) -> Outcome {
    let left_name = p.object_name("left")?;
    let right_path = Problem::arg_path("right");
    let Some(rv) = p.arg("right") else {
        return Err(InputError { path: "$.task_args".into(), msg: "missing field `right`".into() }.into());
    };
    let right = Problem::from_value_at(rv, &right_path)?;
    let right_name = right.object_name("object")?;
    let t = external_tensor(&object(p, &left_name)?, &object(&right, &right_name)?)?;
    t.verify()?;
    let mut r = Report::new();
    r.text.push_str(&report::describe(&t));
    r.line("verified: true");
    r.set("left", json!(left_name));
    r.set("right", json!(right_name));
    r.set("factorization", report::factorization(&t));
    r.set("verified", json!(true));
    if p.arg_bool("end", false)? {
        let d = ext(&t, &t, budget)?.dims;
        r.line(format!("End dims {}", dims_cell(d)));
        r.set("end_dims", dims(d));
    }
    Ok(r)
}

fn hh_report(p: &Problem, budget: &Budget, dims_: [QDim; 2], label: &str) -> Outcome {
    let mu = milnor_number(&p.ring, &p.w, budget)?;
    let mut r = Report::new();
    r.line(format!("W = {}", p.ring.format(&p.w)));
    r.table(
        &["route", "even", "odd", "milnor"],
        &[vec![label.to_string(), dims_[0].to_string(), dims_[1].to_string(), mu.to_string()]],
    );
    r.set("W", json!(p.ring.format(&p.w)));
    r.set("dims", dims(dims_));
    r.set("milnor", qdim(mu));
    Ok(r)
}

pub fn hh_cmd(p: &Problem, budget: &Budget) -> Outcome {
    let h = hh_cohomology(&p.w, &p.cover()?, budget)?;
    hh_report(p, budget, h.dims, "polyvector")
}

pub fn hh_homology_cmd(p: &Problem, budget: &Budget) -> Outcome {
    let h = hh_homology(&p.w, &p.cover()?, budget)?;
    let mut r = hh_report(p, budget, h.dims, "forms")?;
    // mu sits in parity n, nothing in the other parity
    let n = Parity::of(p.ring.nvars());
    let mu = milnor_number(&p.ring, &p.w, budget)?;
    let mut expected = [QDim::Finite(0); 2];
    expected[n.index()] = mu;
    let ok = h.dims == expected;
    r.line(format!("expected {}: {}", dims_cell(expected), if ok { "pass" } else { "fail" }));
    r.set("expected", dims(expected));
    r.set("pass", json!(ok));
    r.check(ok);
    Ok(r)
}

pub fn hh_diagonal_cmd(p: &Problem, budget: &Budget) -> Outcome {
    let h = hh_via_diagonal(&p.ring, &p.w, budget)?;
    hh_report(p, budget, h.dims, "diagonal")
}

pub fn hh_compare_cmd(p: &Problem, budget: &Budget) -> Outcome {
    let c = compare_hh(&p.w, &p.cover()?, budget)?;
    let mut r = Report::new();
    r.line(format!("W = {}", p.ring.format(&p.w)));
    let ms = |d: std::time::Duration| format!("{:.1} ms", d.as_secs_f64() * 1e3);
    r.table(
        &["route", "even", "odd", "time"],
        &[
            vec![
                "polyvector".to_string(),
                c.polyvector.dims[0].to_string(),
                c.polyvector.dims[1].to_string(),
                ms(c.polyvector_time),
            ],
            vec![
                "diagonal".to_string(),
                c.diagonal.dims[0].to_string(),
                c.diagonal.dims[1].to_string(),
                ms(c.diagonal_time),
            ],
        ],
    );
    r.line(format!("milnor number {}", c.milnor));
    r.line(if c.pass() { "pass" } else { "fail" });
    r.check(c.pass());
    r.set("W", json!(p.ring.format(&p.w)));
    r.set("polyvector", dims(c.polyvector.dims));
    r.set("diagonal", dims(c.diagonal.dims));
    r.set("milnor", qdim(c.milnor));
    r.set("pass", json!(c.pass()));
    Ok(r)
}

pub fn cy_check_cmd(p: &Problem, budget: &Budget) -> Outcome {
    let (s, t) = (p.object_name("source")?, p.object_name("target")?);
    let n = p.arg_usize("n", p.ring.nvars())?;
    let c = cy_symmetry_check(&object(p, &s)?, &object(p, &t)?, n, budget)?;
    let mut r = Report::new();
    r.line(format!("n = {n}"));
    r.table(
        &["group", "even", "odd"],
        &[
            vec![format!("Ext({s}, {t})"), c.ext_pq[0].to_string(), c.ext_pq[1].to_string()],
            vec![format!("Ext({t}, {s})"), c.ext_qp[0].to_string(), c.ext_qp[1].to_string()],
        ],
    );
    r.line(if c.pass() { "pass" } else { "fail" });
    r.check(c.pass());
    r.set("n", json!(n));
    r.set("source", json!(s));
    r.set("target", json!(t));
    r.set("ext_source_target", dims(c.ext_pq));
    r.set("ext_target_source", dims(c.ext_qp));
    r.set("pass", json!(c.pass()));
    Ok(r)
}

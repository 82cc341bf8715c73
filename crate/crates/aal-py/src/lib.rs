//! Python bindings for the finite-model workbench.
//!
//! The module mirrors the CLI surface: load or construct an algebra,
//! then ask for filters, congruences, Leibniz reductions, and the
//! logic-specific reports. Everything returns plain Python data
//! (ints, bools, lists, dicts), no opaque handles beyond the three
//! wrapper classes.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use aal::algebra::FiniteAlgebra;
use aal::congruence::{
    congruence_lattice, is_reduced_matrix, leibniz_congruence,
};
use aal::demorgan::{
    self, named_solutions, rt_il_weml_check, validate_dmm, NamedDmm,
};
use aal::filters::{filter_generate, filter_lattice, Builtin, FilterSystem};
use aal::files;
use aal::heyting::{kc_holds, upset_algebra, validate_heyting};
use aal::lattice::{lattice_from_order, SemilatticeProp};
use aal::limits::Caps;
use aal::modal::{
    complex_algebra, modal_condition_report, validate_modal, ClosureKind,
    KripkeFrame,
};
use aal::parse::parse_term;
use aal::poset::FinitePoset;

fn err(e: aal::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn builtin_for(a: &FiniteAlgebra) -> PyResult<FilterSystem> {
    let sig = a.signature();
    let has = |name: &str, arity: usize| sig.arity_of(name) == Some(arity);
    if has("fuse", 2) && has("meet", 2) && has("join", 2) && has("neg", 1) && has("e", 0) {
        Ok(FilterSystem::Builtin(Builtin::Dmm))
    } else if has("arrow", 2) && has("meet", 2) && has("join", 2) && has("bot", 0) {
        Ok(FilterSystem::Builtin(Builtin::Heyting))
    } else if has("box", 1) && has("meet", 2) && has("join", 2) && has("top", 0) {
        Ok(FilterSystem::Builtin(Builtin::ModalGlobal))
    } else {
        Err(PyValueError::new_err(
            "signature matches none of the builtin filter systems",
        ))
    }
}

type Axioms = Vec<(String, bool, Option<Vec<usize>>)>;

/// A finite algebra: universe 0..size with named operation tables.
#[pyclass]
struct Algebra {
    inner: FiniteAlgebra,
}

#[pymethods]
impl Algebra {
    /// One of the named De Morgan monoids: B2 (alias 2), S3, C4, D4.
    #[staticmethod]
    fn named(name: &str) -> PyResult<Algebra> {
        let which = NamedDmm::parse(name).ok_or_else(|| {
            PyValueError::new_err(format!("unknown named algebra {name:?}"))
        })?;
        Ok(Algebra {
            inner: demorgan::named(which),
        })
    }

    /// Read an algebra file.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Algebra> {
        Ok(Algebra {
            inner: files::load_algebra(path).map_err(err)?,
        })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn labels(&self) -> BTreeMap<usize, String> {
        self.inner.labels().clone()
    }

    /// Operation symbols with their arities.
    fn symbols(&self) -> Vec<(String, usize)> {
        self.inner.signature().symbols().to_vec()
    }

    /// Evaluate a term such as "fuse(v1,neg(v2))" under an assignment
    /// mapping variable indices to elements.
    fn eval(&self, term: &str, asg: BTreeMap<u32, usize>) -> PyResult<usize> {
        let t = parse_term(self.inner.signature(), term).map_err(err)?;
        self.inner.eval(&t, &asg).map_err(err)
    }

    /// Axiom sweep for whichever of the three builtin classes the
    /// signature matches. Returns (axiom, holds, witness) triples.
    fn validate(&self) -> PyResult<Axioms> {
        let checks = match builtin_for(&self.inner)? {
            FilterSystem::Builtin(Builtin::Dmm) => {
                validate_dmm(&self.inner).map_err(err)?.checks
            }
            FilterSystem::Builtin(Builtin::Heyting) => {
                validate_heyting(&self.inner).map_err(err)?
            }
            _ => validate_modal(&self.inner).map_err(err)?,
        };
        Ok(checks
            .into_iter()
            .map(|c| (c.name.to_string(), c.holds, c.witness))
            .collect())
    }

    /// All congruences as block lists, identity first, total last.
    fn congruences(&self) -> PyResult<Vec<Vec<Vec<usize>>>> {
        let r = congruence_lattice(&self.inner, &Caps::default()).map_err(err)?;
        Ok(r.congruences.iter().map(|p| p.blocks()).collect())
    }

    /// Largest congruence compatible with the filter, as blocks.
    fn leibniz(&self, filter: Vec<usize>) -> PyResult<Vec<Vec<usize>>> {
        Ok(leibniz_congruence(&self.inner, &filter).map_err(err)?.blocks())
    }

    /// Whether the Leibniz congruence of the filter is the identity.
    fn is_reduced(&self, filter: Vec<usize>) -> PyResult<bool> {
        is_reduced_matrix(&self.inner, &filter).map_err(err)
    }

    /// All deductive filters of the detected builtin system, sorted.
    fn filters(&self) -> PyResult<Vec<Vec<usize>>> {
        let sys = builtin_for(&self.inner)?;
        let r = filter_lattice(&self.inner, &sys, &Caps::default()).map_err(err)?;
        Ok(r.filters)
    }

    /// Least deductive filter containing the seed.
    fn filter_generate(&self, seed: Vec<usize>) -> PyResult<Vec<usize>> {
        let sys = builtin_for(&self.inner)?;
        filter_generate(&self.inner, &sys, &seed).map_err(err)
    }

    /// Heyting algebras: does ~v + ~~v = top hold everywhere?
    /// Returns (holds, witness) with witness = (v, value) on failure.
    fn kc(&self) -> PyResult<(bool, Option<(usize, usize)>)> {
        let c = kc_holds(&self.inner).map_err(err)?;
        Ok((c.holds, c.witness))
    }

    /// De Morgan monoids: the inconsistency-sequence and excluded-middle
    /// flags, as a dict.
    fn rt_il_weml(&self, nmax: usize) -> PyResult<BTreeMap<String, bool>> {
        let c = rt_il_weml_check(&self.inner, nmax, &Caps::default()).map_err(err)?;
        Ok(BTreeMap::from([
            ("il_ok".to_string(), c.il_ok),
            ("least_is_fmeet".to_string(), c.least_is_fmeet),
            ("weml_id".to_string(), c.weml_id),
            ("greatest_proper_when_fsi".to_string(), c.greatest_proper_when_fsi),
        ]))
    }

    /// Serialize in the algebra file format.
    fn export(&self) -> String {
        files::write_algebra(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Algebra({:?}, size={})", self.inner.name(), self.inner.size())
    }
}

/// How many tables satisfy the named-algebra constraints; 1 means the
/// published diagram pins the algebra down.
#[pyfunction]
fn named_solution_count(name: &str) -> PyResult<usize> {
    let which = NamedDmm::parse(name).ok_or_else(|| {
        PyValueError::new_err(format!("unknown named algebra {name:?}"))
    })?;
    Ok(named_solutions(which).len())
}

/// A finite poset on 0..size.
#[pyclass]
struct Poset {
    inner: FinitePoset,
}

#[pymethods]
impl Poset {
    /// Read a poset file (size plus covering pairs).
    #[staticmethod]
    fn load(path: &str) -> PyResult<Poset> {
        Ok(Poset {
            inner: files::load_poset(path).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_covers(name: &str, size: usize, covers: Vec<(usize, usize)>) -> PyResult<Poset> {
        Ok(Poset {
            inner: FinitePoset::from_covers(name, size, &covers).map_err(err)?,
        })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    fn leq(&self, i: usize, j: usize) -> bool {
        self.inner.leq(i, j)
    }

    /// Check a lattice identity by name (DPC, FRINK, WEML_ID, EML_ID,
    /// STAR_MEET_ZERO, STAR_STARSTAR_MEET_ZERO). Returns
    /// (holds, witness); holds is None when the identity needs dual
    /// pseudocomplements the lattice lacks.
    fn check(&self, prop: &str) -> PyResult<(Option<bool>, Option<Vec<usize>>)> {
        let p = SemilatticeProp::parse(prop).ok_or_else(|| {
            PyValueError::new_err(format!("unknown property {prop:?}"))
        })?;
        let lat = lattice_from_order(&self.inner).map_err(err)?;
        match lat.semilattice_property(p) {
            Ok(c) => Ok((Some(c.holds), c.witness)),
            Err(aal::Error::RequiresDpc { witness }) => Ok((None, Some(vec![witness]))),
            Err(e) => Err(err(e)),
        }
    }

    /// Heyting algebra of up-sets, elements labeled by their sets.
    fn upsets(&self) -> PyResult<Algebra> {
        Ok(Algebra {
            inner: upset_algebra(self.inner.name(), &self.inner).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Poset({:?}, size={})", self.inner.name(), self.inner.size())
    }
}

/// A Kripke frame: points 0..n with an accessibility relation.
#[pyclass]
struct Frame {
    inner: KripkeFrame,
}

#[pymethods]
impl Frame {
    /// Read a frame file (points, edges, closure directive).
    #[staticmethod]
    fn load(path: &str) -> PyResult<Frame> {
        Ok(Frame {
            inner: files::load_frame(path).map_err(err)?,
        })
    }

    /// closure: "none", "reflexive", "transitive", or "preorder".
    #[staticmethod]
    fn new(
        name: &str,
        points: usize,
        edges: Vec<(usize, usize)>,
        closure: &str,
    ) -> PyResult<Frame> {
        let kind = ClosureKind::parse(closure).ok_or_else(|| {
            PyValueError::new_err(format!("unknown closure kind {closure:?}"))
        })?;
        Ok(Frame {
            inner: KripkeFrame::new(name, points, &edges, kind).map_err(err)?,
        })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn points(&self) -> usize {
        self.inner.points()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    #[getter]
    fn reflexive(&self) -> bool {
        self.inner.is_reflexive()
    }

    #[getter]
    fn transitive(&self) -> bool {
        self.inner.is_transitive()
    }

    #[getter]
    fn up_directed(&self) -> bool {
        self.inner.is_up_directed()
    }

    /// Boolean algebra of point sets with the box operator.
    fn complex(&self) -> PyResult<Algebra> {
        Ok(Algebra {
            inner: complex_algebra(&self.inner).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Frame({:?}, points={})", self.inner.name(), self.inner.points())
    }
}

/// Modal condition report over the complex algebras of the frames:
/// stabilization bound, least inconsistency level, excluded-middle
/// disjunction at that level, S4 and convergence validity, and the
/// crosscheck tying excluded middle to convergence on S4 classes.
#[pyfunction]
#[pyo3(signature = (frames, nmax = 2))]
fn modal_report(
    py: Python<'_>,
    frames: Vec<PyRef<Frame>>,
    nmax: usize,
) -> PyResult<Py<PyDict>> {
    let algebras: Vec<FiniteAlgebra> = frames
        .iter()
        .map(|f| complex_algebra(&f.inner).map_err(err))
        .collect::<PyResult<_>>()?;
    let refs: Vec<&FiniteAlgebra> = algebras.iter().collect();
    let r = modal_condition_report(&refs, nmax).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("stabilization", r.stabilization)?;
    d.set_item("il_n", r.il_n)?;
    d.set_item("weml", r.weml_at_n)?;
    d.set_item("s4", r.s4)?;
    d.set_item("convergence", r.convergence)?;
    d.set_item("crosscheck", r.crosscheck)?;
    Ok(d.into())
}

#[pymodule]
fn aal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_class::<Poset>()?;
    m.add_class::<Frame>()?;
    m.add_function(wrap_pyfunction!(named_solution_count, m)?)?;
    m.add_function(wrap_pyfunction!(modal_report, m)?)?;
    Ok(())
}

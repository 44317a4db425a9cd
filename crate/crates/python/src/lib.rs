//! Python bindings: groups, character tables, blocks, verdicts and the batch
//! analysis, with reports returned as plain dicts and lists.

use pyo3::exceptions::{PyIOError, PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;

use nilblock::blocks::{block_partition, describe_block};
use nilblock::chartab::character_table;
use nilblock::cli::analyze::{analyze as analyze_target, AnalyzeOptions, Target};
use nilblock::cli::catalog::{lookup, CATALOG};
use nilblock::permgroup::{GroupFile, PermGroup, Permutation, DEFAULT_SUBGROUP_CAP};
use nilblock::verdicts::{block_verdict, hyperfocal_surrogate, remark14_reproduction};
use nilblock::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::UnknownGroup(_) => PyKeyError::new_err(e.to_string()),
        Error::Io(_) => PyIOError::new_err(e.to_string()),
        Error::MalformedInput(_) | Error::Domain(_) | Error::NotPIntegral(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py_any(py)?,
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_py_any(py)?,
            (None, Some(i)) => i.into_py_any(py)?,
            _ => n.as_f64().unwrap_or_default().into_py_any(py)?,
        },
        Value::String(s) => s.into_py_any(py)?,
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py_any(py)?
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_py_any(py)?
        }
    })
}

fn to_py(py: Python<'_>, value: &impl serde::Serialize) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    json_to_py(py, &v)
}

/// A permutation group given by generators on points `1..=degree`.
#[pyclass(name = "Group", frozen)]
struct PyGroup {
    name: String,
    inner: PermGroup,
}

#[pymethods]
impl PyGroup {
    /// Build from cycle strings such as "(1,2,3)(4,5)".
    #[new]
    #[pyo3(signature = (degree, generators, name="group"))]
    fn new(degree: usize, generators: Vec<String>, name: &str) -> PyResult<Self> {
        let gens = generators
            .iter()
            .map(|s| Permutation::parse_cycles(degree, s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(py_err)?;
        Ok(PyGroup {
            name: name.to_string(),
            inner: PermGroup::new(degree, gens).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        let entry = lookup(name).map_err(py_err)?;
        Ok(PyGroup {
            name: entry.name.to_string(),
            inner: entry.build().map_err(py_err)?,
        })
    }

    /// Read a TOML group file.
    #[staticmethod]
    fn from_file(path: std::path::PathBuf) -> PyResult<Self> {
        let file = GroupFile::read(&path).map_err(py_err)?;
        Ok(PyGroup {
            inner: file.build().map_err(py_err)?,
            name: file.name,
        })
    }

    #[getter]
    fn name(&self) -> &str {
        &self.name
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn order(&self) -> u64 {
        self.inner.order()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner
            .generators()
            .iter()
            .map(|g| g.to_cycle_string())
            .collect()
    }

    fn contains(&self, cycles: &str) -> PyResult<bool> {
        let x = Permutation::parse_cycles(self.inner.degree(), cycles).map_err(py_err)?;
        Ok(self.inner.contains(&x))
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn is_p_nilpotent(&self, p: u64) -> PyResult<bool> {
        self.inner.is_p_nilpotent(p).map_err(py_err)
    }

    fn is_p_solvable(&self, p: u64) -> PyResult<bool> {
        self.inner.is_p_solvable(p).map_err(py_err)
    }

    fn sylow_subgroup(&self, p: u64) -> PyResult<Self> {
        self.derived_group(
            format!("sylow{p}"),
            self.inner.sylow_subgroup(p).map_err(py_err)?,
        )
    }

    fn derived_subgroup(&self) -> PyResult<Self> {
        self.derived_group("derived".into(), self.inner.derived_subgroup())
    }

    fn o_upper_p(&self, p: u64) -> PyResult<Self> {
        self.derived_group(format!("O^{p}"), self.inner.o_upper_p(p).map_err(py_err)?)
    }

    fn __repr__(&self) -> String {
        format!(
            "Group({:?}, degree={}, order={})",
            self.name,
            self.inner.degree(),
            self.inner.order()
        )
    }
}

impl PyGroup {
    fn derived_group(&self, what: String, inner: PermGroup) -> PyResult<Self> {
        Ok(PyGroup {
            name: format!("{}:{what}", self.name),
            inner,
        })
    }
}

/// Exact ordinary character table.
#[pyclass(name = "CharacterTable", frozen)]
struct PyCharacterTable {
    inner: nilblock::chartab::CharacterTable,
}

#[pymethods]
impl PyCharacterTable {
    #[new]
    fn new(py: Python<'_>, group: &PyGroup) -> PyResult<Self> {
        let g = group.inner.clone();
        let inner = py.detach(|| character_table(&g)).map_err(py_err)?;
        Ok(PyCharacterTable { inner })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn degrees(&self) -> Vec<u64> {
        self.inner.degrees().to_vec()
    }

    #[getter]
    fn class_sizes(&self) -> Vec<u64> {
        self.inner
            .classes()
            .classes()
            .iter()
            .map(|c| c.size)
            .collect()
    }

    #[getter]
    fn class_representatives(&self) -> Vec<String> {
        self.inner
            .classes()
            .classes()
            .iter()
            .map(|c| c.representative.to_cycle_string())
            .collect()
    }

    #[getter]
    fn exponent(&self) -> u64 {
        self.inner.exponent()
    }

    /// `χ_row(class)` as a polynomial in `z = exp(2πi/exponent)`.
    fn value(&self, row: usize, class: usize) -> PyResult<String> {
        if row >= self.inner.len() || class >= self.inner.len() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.inner.value(row, class).to_poly_string())
    }

    fn to_tsv(&self) -> String {
        self.inner.to_tsv()
    }

    /// Block fragments at `p`: degrees, defect, defect group, heights.
    fn blocks(&self, py: Python<'_>, p: u64) -> PyResult<Vec<Py<PyAny>>> {
        let blocks = block_partition(&self.inner, p).map_err(py_err)?;
        blocks
            .iter()
            .map(|b| json_to_py(py, &describe_block(&self.inner, b)))
            .collect()
    }

    /// One verdict dict per block at `p`.
    #[pyo3(signature = (p, fusion_cap=DEFAULT_SUBGROUP_CAP))]
    fn verdicts(&self, py: Python<'_>, p: u64, fusion_cap: usize) -> PyResult<Vec<Py<PyAny>>> {
        let blocks = block_partition(&self.inner, p).map_err(py_err)?;
        let name = "table";
        let verdicts = py
            .detach(|| {
                blocks
                    .iter()
                    .enumerate()
                    .map(|(i, b)| block_verdict(name, &self.inner, i, b, fusion_cap))
                    .collect::<Result<Vec<_>, _>>()
            })
            .map_err(py_err)?;
        verdicts.iter().map(|v| to_py(py, v)).collect()
    }
}

/// Full report for one group at one prime, as returned by the CLI.
#[pyfunction]
#[pyo3(signature = (group, p, fusion_cap=DEFAULT_SUBGROUP_CAP))]
fn analyze(py: Python<'_>, group: &PyGroup, p: u64, fusion_cap: usize) -> PyResult<Py<PyAny>> {
    let target = Target::new(&group.name, group.inner.clone(), p);
    let options = AnalyzeOptions {
        fusion_cap,
        ..Default::default()
    };
    let report = py
        .detach(|| analyze_target(&target, &options).and_then(|a| a.report(&options)))
        .map_err(py_err)?;
    to_py(py, &report)
}

/// The order-34992 example at p = 3.
#[pyfunction]
fn remark14(py: Python<'_>) -> PyResult<Py<PyAny>> {
    let r = py.detach(remark14_reproduction).map_err(py_err)?;
    to_py(py, &r)
}

/// Covered-block degrees against abelianness of `P ∩ O^p(G)`.
#[pyfunction]
fn surrogate(py: Python<'_>, group: &PyGroup, p: u64) -> PyResult<Py<PyAny>> {
    let r = py
        .detach(|| hyperfocal_surrogate(&group.inner, p))
        .map_err(py_err)?;
    to_py(py, &r)
}

/// Catalog entries as dicts with name, order, primes and description.
#[pyfunction]
fn catalog(py: Python<'_>) -> PyResult<Vec<Py<PyAny>>> {
    CATALOG
        .iter()
        .map(|e| {
            let d = PyDict::new(py);
            d.set_item("name", e.name)?;
            d.set_item("order", e.order)?;
            d.set_item("primes", e.default_primes.to_vec())?;
            d.set_item("description", e.description)?;
            d.into_py_any(py)
        })
        .collect()
}

#[pymodule]
#[pyo3(name = "nilblock")]
fn nilblock_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyCharacterTable>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(remark14, m)?)?;
    m.add_function(wrap_pyfunction!(surrogate, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    Ok(())
}

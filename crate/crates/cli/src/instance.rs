//! The JSON instance file format.

use std::str::FromStr;
use std::sync::Arc;

use hn_core::instances::InstanceError;
use hn_core::poset::{FinitePoset, Numeric};
use hn_core::{
    AdmissibleFamily, DegreeRankLabels, FamilyError, LabelSet, MemberId, PosetValue, SlopeError, SlopeFunction,
    ValuePoset,
};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

/// An input problem, located by the path of the offending field.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl InputError {
    pub fn new(path: impl Into<String>, message: impl ToString) -> Self {
        InputError { path: path.into(), message: message.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub ground_size: usize,
    pub gamma: Vec<Vec<usize>>,
    pub lambda: LambdaSpec,
    pub slope: SlopeSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<LabelsSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NumericSpec {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LambdaSpec {
    ExtendedReal {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        numeric: Option<NumericSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        tolerance: Option<f64>,
    },
    ReverseInclusion {
        universe: Vec<String>,
    },
    ExplicitFinite {
        elements: Vec<String>,
        order: Vec<Vec<bool>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        joins: Option<bool>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub sub: usize,
    pub sup: usize,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SlopeSpec {
    Table {
        entries: Vec<TableEntry>,
    },
    /// Uses the top-level `labels`.
    DegreeRank,
    PrimeSupport,
    /// One eigenvalue per ground element.
    Eigen {
        eigenvalues: Vec<f64>,
    },
}

/// A degree given as a `"p/q"` string or a JSON number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Text(String),
    Number(f64),
}

impl RationalText {
    pub fn to_rational(&self) -> Result<BigRational, String> {
        match self {
            RationalText::Text(s) => parse_rational(s),
            RationalText::Number(x) => BigRational::from_float(*x).ok_or_else(|| format!("{x} is not finite")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelsSpec {
    pub deg: Vec<RationalText>,
    pub rk: Vec<u64>,
}

/// `"p/q"` or `"p"` with optional sign.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s.trim()).map_err(|_| format!("{s:?} is not a rational of the form p/q"))
}

/// A validated instance together with the file it came from.
#[derive(Debug, Clone)]
pub struct Instance {
    pub file: InstanceFile,
    pub family: Arc<AdmissibleFamily>,
    pub poset: Arc<ValuePoset>,
    pub slope: SlopeFunction,
    pub labels: Option<DegreeRankLabels>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct TableBody {
    entries: Vec<TableEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct EigenBody {
    eigenvalues: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct ExtendedRealBody {
    numeric: Option<NumericSpec>,
    tolerance: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct ReverseInclusionBody {
    universe: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct ExplicitFiniteBody {
    elements: Vec<String>,
    order: Vec<Vec<bool>>,
    joins: Option<bool>,
}

fn body_error<T: serde::de::DeserializeOwned>(field: &str, body: Value) -> Option<InputError> {
    let err = serde_path_to_error::deserialize::<_, T>(body).err()?;
    let inner = err.path().to_string();
    let path = if inner == "." { field.to_string() } else { format!("{field}.{inner}") };
    Some(InputError::new(path, err.into_inner()))
}

/// Tagged enums buffer their content, which hides the path inside a variant.
/// Re-reads the variant body on its own to locate the offending field.
fn refine(text: &str, field: &str) -> Option<InputError> {
    let mut root: Value = serde_json::from_str(text).ok()?;
    let mut body = root.get_mut(field)?.as_object()?.clone();
    let kind = body.remove("kind")?;
    let body = Value::Object(body);
    match (field, kind.as_str()?) {
        ("slope", "table") => body_error::<TableBody>(field, body),
        ("slope", "eigen") => body_error::<EigenBody>(field, body),
        ("lambda", "extended_real") => body_error::<ExtendedRealBody>(field, body),
        ("lambda", "reverse_inclusion") => body_error::<ReverseInclusionBody>(field, body),
        ("lambda", "explicit_finite") => body_error::<ExplicitFiniteBody>(field, body),
        _ => None,
    }
}

pub fn parse_instance(text: &str) -> Result<InstanceFile, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        if let Some(refined) = refine(text, &path) {
            return refined;
        }
        InputError::new(if path == "." { "<root>".to_string() } else { path }, e.into_inner())
    })
}

pub fn load_instance(text: &str) -> Result<Instance, InputError> {
    build_instance(parse_instance(text)?)
}

fn family_error(e: FamilyError) -> InputError {
    let path = match &e {
        FamilyError::ElementOutOfRange { member, .. } => format!("gamma[{member}]"),
        FamilyError::BadGroundSize(_) => "ground_size".into(),
        _ => "gamma".into(),
    };
    InputError::new(path, e)
}

fn decode_value(poset: &ValuePoset, v: &Value) -> Result<PosetValue, String> {
    if v.as_str() == Some("+inf") {
        return Ok(PosetValue::PlusInfinity);
    }
    match poset {
        ValuePoset::ExtendedReal(Numeric::Exact) => match v {
            Value::String(s) => Ok(PosetValue::Rational(parse_rational(s)?)),
            Value::Number(n) if n.is_i64() => Ok(PosetValue::integer(n.as_i64().expect("checked"))),
            _ => Err(format!("expected a rational string or an integer, got {v}")),
        },
        ValuePoset::ExtendedReal(Numeric::Float { .. }) => match v.as_f64() {
            Some(x) if x.is_finite() => Ok(PosetValue::Real(x)),
            _ => Err(format!("expected a finite number or \"+inf\", got {v}")),
        },
        ValuePoset::ReverseInclusion { .. } => {
            let items = v.as_array().ok_or_else(|| format!("expected an array of labels, got {v}"))?;
            let mut set = LabelSet::EMPTY;
            for item in items {
                let name = item.as_str().ok_or_else(|| format!("label {item} is not a string"))?;
                set = LabelSet(set.0 | LabelSet::singleton(poset.label_index(name).map_err(|e| e.to_string())?).0);
            }
            Ok(PosetValue::Labels(set))
        }
        ValuePoset::ExplicitFinite(_) => {
            let name = v.as_str().ok_or_else(|| format!("expected an element label, got {v}"))?;
            Ok(PosetValue::Element(poset.label_index(name).map_err(|e| e.to_string())?))
        }
    }
}

/// JSON encoding of a value: rationals as strings, floats as numbers, the
/// top as `"+inf"`, label sets as arrays and explicit elements by label.
pub fn encode_value(poset: &ValuePoset, v: &PosetValue) -> Value {
    match v {
        PosetValue::PlusInfinity => Value::String("+inf".into()),
        PosetValue::Real(x) => serde_json::Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null),
        PosetValue::Rational(_) | PosetValue::Element(_) => Value::String(poset.render(v)),
        PosetValue::Labels(s) => {
            let universe = poset.universe().unwrap_or(&[]);
            Value::Array(s.indices().filter_map(|i| universe.get(i)).map(|n| Value::String(n.clone())).collect())
        }
    }
}

fn build_poset(file: &InstanceFile) -> Result<ValuePoset, InputError> {
    let err = |m: String| InputError::new("lambda", m);
    match &file.lambda {
        LambdaSpec::ExtendedReal { numeric, tolerance } => {
            let default =
                if matches!(file.slope, SlopeSpec::Eigen { .. }) { NumericSpec::Float } else { NumericSpec::Exact };
            match numeric.unwrap_or(default) {
                NumericSpec::Exact if tolerance.is_some() => {
                    Err(InputError::new("lambda.tolerance", "only float reals take a tolerance"))
                }
                NumericSpec::Exact => Ok(ValuePoset::exact_reals()),
                NumericSpec::Float => {
                    ValuePoset::float_reals(tolerance.unwrap_or(hn_core::poset::DEFAULT_FLOAT_TOLERANCE))
                        .map_err(|e| InputError::new("lambda.tolerance", e))
                }
            }
        }
        LambdaSpec::ReverseInclusion { universe } => {
            ValuePoset::reverse_inclusion(universe.clone()).map_err(|e| InputError::new("lambda.universe", e))
        }
        LambdaSpec::ExplicitFinite { elements, order, joins } => {
            ValuePoset::explicit_finite(elements.clone(), order.clone(), joins.unwrap_or(true))
                .map_err(|e| err(e.to_string()))
        }
    }
}

fn slope_error(e: SlopeError) -> InputError {
    InputError::new("slope", e)
}

pub fn build_instance(file: InstanceFile) -> Result<Instance, InputError> {
    let family = Arc::new(AdmissibleFamily::from_lists(file.ground_size, &file.gamma).map_err(family_error)?);
    let poset = Arc::new(build_poset(&file)?);
    let labels = match &file.labels {
        None => None,
        Some(spec) => {
            let mut deg = Vec::with_capacity(spec.deg.len());
            for (i, d) in spec.deg.iter().enumerate() {
                deg.push(d.to_rational().map_err(|m| InputError::new(format!("labels.deg[{i}]"), m))?);
            }
            Some(DegreeRankLabels::new(&family, deg, spec.rk.clone()).map_err(|e| InputError::new("labels", e))?)
        }
    };
    let slope = match &file.slope {
        SlopeSpec::Table { entries } => {
            let n = family.len();
            let mut decoded = Vec::with_capacity(entries.len());
            for (i, e) in entries.iter().enumerate() {
                let path = |f: &str| format!("slope.entries[{i}].{f}");
                if e.sub >= n {
                    return Err(InputError::new(path("sub"), format!("no member {}", e.sub)));
                }
                if e.sup >= n {
                    return Err(InputError::new(path("sup"), format!("no member {}", e.sup)));
                }
                let v = decode_value(&poset, &e.value).map_err(|m| InputError::new(path("value"), m))?;
                decoded.push((MemberId(e.sub), MemberId(e.sup), v));
            }
            SlopeFunction::from_table(family.clone(), poset.clone(), decoded).map_err(|e| {
                let at = match &e {
                    SlopeError::DuplicateEntry { sub, sup } | SlopeError::NonStrictPair { sub, sup } => entries
                        .iter()
                        .rposition(|x| x.sub == sub.0 && x.sup == sup.0)
                        .map(|i| format!("slope.entries[{i}]")),
                    _ => None,
                };
                InputError::new(at.unwrap_or_else(|| "slope.entries".into()), e)
            })?
        }
        SlopeSpec::DegreeRank => {
            let l = labels.clone().ok_or_else(|| InputError::new("labels", "the degree_rank slope needs labels"))?;
            if *poset != ValuePoset::exact_reals() {
                return Err(InputError::new("lambda", "the degree_rank slope needs exact extended_real values"));
            }
            SlopeFunction::degree_rank(family.clone(), l).map_err(slope_error)?
        }
        SlopeSpec::PrimeSupport => SlopeFunction::prime_support(family.clone(), poset.clone()).map_err(slope_error)?,
        SlopeSpec::Eigen { eigenvalues } => {
            SlopeFunction::max_weight(family.clone(), poset.clone(), eigenvalues.clone()).map_err(slope_error)?
        }
    };
    Ok(Instance { file, family, poset, slope, labels })
}

impl Instance {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.file).expect("instance files serialize")
    }
}

pub fn to_lists(family: &AdmissibleFamily) -> Vec<Vec<usize>> {
    family.subsets().iter().map(|s| s.elements().collect()).collect()
}

/// Instance file for an arbitrary slope function, tabulating it.
pub fn tabulate(sf: &SlopeFunction) -> InstanceFile {
    let fam = sf.family();
    let poset = sf.poset();
    let entries = fam
        .strict_pairs()
        .map(|p| TableEntry {
            sub: p.sub.0,
            sup: p.sup.0,
            value: encode_value(poset, &sf.eval(p.sub, p.sup).expect("strict")),
        })
        .collect();
    InstanceFile {
        ground_size: fam.ground().size(),
        gamma: to_lists(fam),
        lambda: lambda_spec(poset),
        slope: SlopeSpec::Table { entries },
        labels: None,
    }
}

pub fn lambda_spec(poset: &ValuePoset) -> LambdaSpec {
    match poset {
        ValuePoset::ExtendedReal(Numeric::Exact) => {
            LambdaSpec::ExtendedReal { numeric: Some(NumericSpec::Exact), tolerance: None }
        }
        ValuePoset::ExtendedReal(Numeric::Float { tolerance }) => {
            LambdaSpec::ExtendedReal { numeric: Some(NumericSpec::Float), tolerance: Some(*tolerance) }
        }
        ValuePoset::ReverseInclusion { universe } => LambdaSpec::ReverseInclusion { universe: universe.clone() },
        ValuePoset::ExplicitFinite(p) => explicit_spec(p),
    }
}

fn explicit_spec(p: &FinitePoset) -> LambdaSpec {
    let n = p.len();
    let order = (0..n).map(|a| (0..n).map(|b| p.leq_index(a, b)).collect()).collect();
    LambdaSpec::ExplicitFinite { elements: p.labels().to_vec(), order, joins: Some(p.has_joins()) }
}

/// JSON for degree labels: integers and `p/q` as strings.
pub fn labels_spec(labels: &DegreeRankLabels) -> LabelsSpec {
    let poset = ValuePoset::exact_reals();
    LabelsSpec {
        deg: labels
            .degrees()
            .iter()
            .map(|d| RationalText::Text(poset.render(&PosetValue::Rational(d.clone()))))
            .collect(),
        rk: labels.ranks().to_vec(),
    }
}

impl From<InstanceError> for InputError {
    fn from(e: InstanceError) -> Self {
        InputError::new("<instance>", e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const COUNTEREXAMPLE: &str = r#"{
        "ground_size": 2,
        "gamma": [[], [0], [0, 1]],
        "lambda": {"kind": "extended_real"},
        "slope": {"kind": "table", "entries": [
            {"sub": 0, "sup": 1, "value": "2"},
            {"sub": 0, "sup": 2, "value": 1},
            {"sub": 1, "sup": 2, "value": "3/1"}
        ]}
    }"#;

    #[test]
    fn parses_counterexample() {
        let inst = load_instance(COUNTEREXAMPLE).unwrap();
        assert_eq!(inst.family.len(), 3);
        assert_eq!(inst.slope.eval(MemberId(1), MemberId(2)).unwrap(), PosetValue::integer(3));
        assert_eq!(*inst.poset, ValuePoset::exact_reals());
    }

    #[test]
    fn errors_name_fields() {
        let bad = COUNTEREXAMPLE.replace(r#""sup": 2, "value": 1"#, r#""sup": 2, "value": true"#);
        assert_eq!(load_instance(&bad).unwrap_err().path, "slope.entries[1].value");
        let bad = COUNTEREXAMPLE.replace(r#""ground_size": 2"#, r#""ground_size": "two""#);
        assert_eq!(load_instance(&bad).unwrap_err().path, "ground_size");
        let bad = COUNTEREXAMPLE.replace("[[], [0], [0, 1]]", "[[], [0], [0, 5]]");
        assert_eq!(load_instance(&bad).unwrap_err().path, "gamma[2]");
        let bad = COUNTEREXAMPLE.replace(r#""sup": 2, "value": 1"#, r#""sup": "2", "value": 1"#);
        assert_eq!(load_instance(&bad).unwrap_err().path, "slope.entries[1].sup");
        let bad = COUNTEREXAMPLE
            .replace(r#"{"kind": "extended_real"}"#, r#"{"kind": "extended_real", "numeric": "decimal"}"#);
        assert_eq!(load_instance(&bad).unwrap_err().path, "lambda.numeric");
        let bad =
            COUNTEREXAMPLE.replace(r#"{"sub": 1, "sup": 2, "value": "3/1"}"#, r#"{"sub": 0, "sup": 1, "value": "3"}"#);
        let e = load_instance(&bad).unwrap_err();
        assert_eq!(e.path, "slope.entries[2]");
        let holed = COUNTEREXAMPLE.replace(
            r#",
            {"sub": 1, "sup": 2, "value": "3/1"}"#,
            "",
        );
        let e = load_instance(&holed).unwrap_err();
        assert!(e.message.contains("no entry"), "{e}");
    }

    #[test]
    fn value_encoding_round_trips() {
        let p = ValuePoset::reverse_inclusion(vec!["2".into(), "3".into()]).unwrap();
        let v = PosetValue::Labels(LabelSet::from_indices([1]));
        assert_eq!(encode_value(&p, &v), serde_json::json!(["3"]));
        assert_eq!(decode_value(&p, &encode_value(&p, &v)).unwrap(), v);
        let q = ValuePoset::exact_reals();
        let r = PosetValue::ratio(-3, 4);
        assert_eq!(encode_value(&q, &r), serde_json::json!("-3/4"));
        assert_eq!(decode_value(&q, &encode_value(&q, &r)).unwrap(), r);
        assert_eq!(decode_value(&q, &serde_json::json!("+inf")).unwrap(), PosetValue::PlusInfinity);
    }

    #[test]
    fn tabulated_round_trip() {
        let inst = load_instance(COUNTEREXAMPLE).unwrap();
        let file = tabulate(&inst.slope);
        let again = load_instance(&serde_json::to_string(&file).unwrap()).unwrap();
        assert_eq!(again.file, file);
        for p in inst.family.strict_pairs() {
            assert_eq!(again.slope.eval(p.sub, p.sup).unwrap(), inst.slope.eval(p.sub, p.sup).unwrap());
        }
    }
}

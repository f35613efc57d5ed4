//! Named polygons and support functions, read from JSON or built in.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::marker::PhantomData;
use std::path::Path;

use hedgehog_core::harness::{build_figure1, Figure1};
use hedgehog_core::{ConvexPolygon, Piece, SupportFunction, ToleranceConfig, TrigPolynomial};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_SAMPLES: usize = 4096;
pub const DEFAULT_PASS_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Defaults {
    pub samples: usize,
    pub pass_tol: f64,
    pub tolerances: ToleranceConfig,
}

impl Default for Defaults {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            pass_tol: DEFAULT_PASS_TOL,
            tolerances: ToleranceConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    #[serde(default, deserialize_with = "unique_map")]
    pub polygons: BTreeMap<String, ConvexPolygon>,
    #[serde(default, deserialize_with = "unique_map")]
    pub hedgehogs: BTreeMap<String, SupportFunction>,
    #[serde(default)]
    pub defaults: Defaults,
}

/// Rejects a JSON object that repeats a key instead of keeping the last one.
fn unique_map<'de, D, T>(d: D) -> Result<BTreeMap<String, T>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    struct Unique<T>(PhantomData<T>);

    impl<'de, T: Deserialize<'de>> Visitor<'de> for Unique<T> {
        type Value = BTreeMap<String, T>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a map of uniquely named entries")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some((k, v)) = access.next_entry::<String, T>()? {
                if out.contains_key(&k) {
                    return Err(de::Error::custom(format!("duplicate name `{k}`")));
                }
                out.insert(k, v);
            }
            Ok(out)
        }
    }

    d.deserialize_map(Unique(PhantomData))
}

/// `1 + 0.1 cos 2θ` on the arcs around `0` and `π`, `1` elsewhere: continuous,
/// with four non-C¹ breakpoints at odd multiples of `π/4`.
pub fn kinked_disk() -> SupportFunction {
    let bump = &TrigPolynomial::constant(1.0) + &TrigPolynomial::cosine(2, 0.1);
    let flat = TrigPolynomial::constant(1.0);
    let q = PI / 4.0;
    let pieces = vec![
        Piece { start: -q, end: q, poly: bump.clone() },
        Piece { start: q, end: 3.0 * q, poly: flat.clone() },
        Piece { start: 3.0 * q, end: 5.0 * q, poly: bump },
        Piece { start: 5.0 * q, end: 7.0 * q, poly: flat },
    ];
    SupportFunction::piecewise(pieces, ToleranceConfig::default()).expect("continuous at every junction")
}

impl Scene {
    /// The slab counterexample pair with its disk, plus the two analytic
    /// hedgehogs of the envelope figures and a kinked disk.
    pub fn figure1() -> Self {
        let Figure1 { p, q, h } = build_figure1();
        let polygons = BTreeMap::from([("P".to_string(), p), ("Q".to_string(), q)]);
        let hedgehogs = BTreeMap::from([
            ("M".to_string(), h),
            ("sin4".to_string(), SupportFunction::analytic(TrigPolynomial::sine(4, 1.0))),
            (
                "trefoil".to_string(),
                SupportFunction::analytic(&TrigPolynomial::sine(3, 2.0) + &TrigPolynomial::constant(1.0)),
            ),
            ("kinked".to_string(), kinked_disk()),
        ]);
        Self {
            polygons,
            hedgehogs,
            defaults: Defaults::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let mut scene: Scene = serde_json::from_str(text)?;
        let tol = scene.defaults.tolerances;
        if !tol.is_valid() {
            return Err(CliError::InvalidArgument("tolerances must be positive".into()));
        }
        if tol != ToleranceConfig::default() {
            for h in scene.hedgehogs.values_mut() {
                *h = SupportFunction::piecewise(h.pieces().to_vec(), tol)?;
            }
        }
        Ok(scene)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene values are finite")
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    /// `figure1` selects the built-in scene; anything else is a file path.
    pub fn resolve(arg: Option<&str>) -> Result<Self, CliError> {
        match arg {
            None | Some("figure1") => Ok(Self::figure1()),
            Some(path) => Self::load(Path::new(path)),
        }
    }

    pub fn polygon(&self, name: &str) -> Result<&ConvexPolygon, CliError> {
        self.polygons.get(name).ok_or_else(|| CliError::UnknownName {
            kind: "polygon",
            name: name.into(),
        })
    }

    pub fn hedgehog(&self, name: &str) -> Result<&SupportFunction, CliError> {
        self.hedgehogs.get(name).ok_or_else(|| CliError::UnknownName {
            kind: "hedgehog",
            name: name.into(),
        })
    }
}

//! Serialization of fixed-size complex vectors as `[[re, im], ...]`.

use serde::de::Error;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::C64;

pub fn serialize<S: Serializer, const N: usize>(v: &[C64; N], s: S) -> Result<S::Ok, S::Error> {
    let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
    pairs.serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>, const N: usize>(d: D) -> Result<[C64; N], D::Error> {
    let pairs = Vec::<[f64; 2]>::deserialize(d)?;
    if pairs.len() != N {
        return Err(D::Error::invalid_length(
            pairs.len(),
            &"one [re, im] pair per basis element",
        ));
    }
    let mut out = [C64::new(0.0, 0.0); N];
    for (o, p) in out.iter_mut().zip(pairs) {
        *o = C64::new(p[0], p[1]);
    }
    Ok(out)
}

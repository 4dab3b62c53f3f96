//! JSON key and ciphertext files. Magnitudes are minimal lowercase hex
//! strings without a prefix.

use std::fmt;
use std::path::Path;

use num_bigint::BigUint;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use phe_core::ceg::{CegCiphertext, CegPublicKey};
use phe_core::dual_engine::AnyCiphertext;
use phe_core::elgamal::{Ciphertext, ElGamalPublicKey, ElGamalSecretKey};
use phe_core::modmath::CrtBasis;
use phe_core::Nat;

use crate::CliError;

/// A magnitude written as minimal lowercase hex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hex(pub Nat);

impl Serialize for Hex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(16))
    }
}

impl<'de> Deserialize<'de> for Hex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct HexVisitor;

        impl Visitor<'_> for HexVisitor {
            type Value = Hex;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a minimal lowercase hex string")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Hex, E> {
                parse_hex(v).map(Hex).map_err(E::custom)
            }
        }

        d.deserialize_str(HexVisitor)
    }
}

pub fn parse_hex(s: &str) -> Result<Nat, String> {
    if s.is_empty() || !s.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f')) {
        return Err(format!("{s:?} is not lowercase hex"));
    }
    if s.len() > 1 && s.starts_with('0') {
        return Err(format!("{s:?} has leading zeros"));
    }
    BigUint::parse_bytes(s.as_bytes(), 16).ok_or_else(|| format!("{s:?} is not hex"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Elgamal,
    Ceg,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Elgamal => "elgamal",
            Scheme::Ceg => "ceg",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyFile {
    pub scheme: Scheme,
    pub n: Hex,
    pub g: Hex,
    pub h: Hex,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<Hex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Hex>,
}

/// Public key of either scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PublicKey {
    ElGamal(ElGamalPublicKey),
    Ceg(CegPublicKey),
}

impl PublicKey {
    pub fn scheme(&self) -> Scheme {
        match self {
            PublicKey::ElGamal(_) => Scheme::Elgamal,
            PublicKey::Ceg(_) => Scheme::Ceg,
        }
    }

    fn base(&self) -> &ElGamalPublicKey {
        match self {
            PublicKey::ElGamal(pk) => pk,
            PublicKey::Ceg(pk) => pk.base(),
        }
    }
}

impl KeyFile {
    pub fn public(pk: &PublicKey) -> Self {
        let base = pk.base();
        let d = match pk {
            PublicKey::ElGamal(_) => None,
            PublicKey::Ceg(pk) => Some(pk.basis().moduli().iter().cloned().map(Hex).collect()),
        };
        Self {
            scheme: pk.scheme(),
            n: Hex(base.n().clone()),
            g: Hex(base.g().clone()),
            h: Hex(base.h().clone()),
            d,
            k: None,
        }
    }

    pub fn secret(pk: &PublicKey, sk: &ElGamalSecretKey) -> Self {
        Self {
            k: Some(Hex(sk.exponent().clone())),
            ..Self::public(pk)
        }
    }

    pub fn public_key(&self) -> Result<PublicKey, CliError> {
        let base = ElGamalPublicKey::new(self.n.0.clone(), self.g.0.clone(), self.h.0.clone(), None)?;
        match (self.scheme, &self.d) {
            (Scheme::Elgamal, None) => Ok(PublicKey::ElGamal(base)),
            (Scheme::Ceg, Some(d)) => {
                let basis = CrtBasis::new(d.iter().map(|h| h.0.clone()).collect())?;
                Ok(PublicKey::Ceg(CegPublicKey::new(base, basis)?))
            }
            (Scheme::Elgamal, Some(_)) => Err(CliError::malformed("elgamal key carries a CRT basis")),
            (Scheme::Ceg, None) => Err(CliError::malformed("ceg key is missing its CRT basis")),
        }
    }

    pub fn secret_key(&self) -> Result<(PublicKey, ElGamalSecretKey), CliError> {
        let k = self
            .k
            .as_ref()
            .ok_or_else(|| CliError::malformed("not a secret key file"))?;
        Ok((self.public_key()?, ElGamalSecretKey::new(k.0.clone())))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub c1: Hex,
    pub c2: Hex,
}

impl From<&Ciphertext> for PairFile {
    fn from(ct: &Ciphertext) -> Self {
        Self {
            c1: Hex(ct.c1.clone()),
            c2: Hex(ct.c2.clone()),
        }
    }
}

impl From<&PairFile> for Ciphertext {
    fn from(p: &PairFile) -> Self {
        Ciphertext::new(p.c1.0.clone(), p.c2.0.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "lowercase")]
pub enum CiphertextFile {
    Elgamal {
        c1: Hex,
        c2: Hex,
    },
    Ceg {
        pairs: Vec<PairFile>,
        add_count: u64,
    },
}

pub fn scheme_of(ct: &AnyCiphertext) -> Scheme {
    match ct {
        AnyCiphertext::ElGamal(_) => Scheme::Elgamal,
        AnyCiphertext::Ceg(_) => Scheme::Ceg,
    }
}

impl From<&AnyCiphertext> for CiphertextFile {
    fn from(ct: &AnyCiphertext) -> Self {
        match ct {
            AnyCiphertext::ElGamal(c) => CiphertextFile::Elgamal {
                c1: Hex(c.c1.clone()),
                c2: Hex(c.c2.clone()),
            },
            AnyCiphertext::Ceg(c) => CiphertextFile::Ceg {
                pairs: c.pairs.iter().map(PairFile::from).collect(),
                add_count: c.add_count,
            },
        }
    }
}

impl From<&CiphertextFile> for AnyCiphertext {
    fn from(f: &CiphertextFile) -> Self {
        match f {
            CiphertextFile::Elgamal { c1, c2 } => AnyCiphertext::ElGamal(Ciphertext::new(c1.0.clone(), c2.0.clone())),
            CiphertextFile::Ceg { pairs, add_count } => AnyCiphertext::Ceg(CegCiphertext::new(
                pairs.iter().map(Ciphertext::from).collect(),
                *add_count,
            )),
        }
    }
}

/// Loads a ciphertext and checks it against the key's scheme and basis.
pub fn load_ciphertext(path: &Path, pk: &PublicKey) -> Result<AnyCiphertext, CliError> {
    let file: CiphertextFile = read_json(path)?;
    let ct = AnyCiphertext::from(&file);
    if scheme_of(&ct) != pk.scheme() {
        return Err(CliError::malformed(format!(
            "{} holds a {} ciphertext but the key is {}",
            path.display(),
            scheme_of(&ct).name(),
            pk.scheme().name()
        )));
    }
    if let (AnyCiphertext::Ceg(c), PublicKey::Ceg(k)) = (&ct, pk) {
        if c.pairs.len() != k.basis().len() {
            return Err(CliError::malformed(format!(
                "{} has {} pairs, the key basis has {}",
                path.display(),
                c.pairs.len(),
                k.basis().len()
            )));
        }
    }
    Ok(ct)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("file types serialize");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex_is_minimal_lowercase() {
        assert_eq!(serde_json::to_string(&Hex(Nat::from(255u32))).unwrap(), "\"ff\"");
        assert_eq!(serde_json::to_string(&Hex(Nat::from(0u32))).unwrap(), "\"0\"");
        assert_eq!(parse_hex("a").unwrap(), Nat::from(10u8));
        assert_eq!(parse_hex("0").unwrap(), Nat::from(0u8));
        for bad in ["", "0a", "FF", "0x1f", "g", " 1"] {
            assert!(parse_hex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ciphertext_file_layout() {
        let ct = AnyCiphertext::ElGamal(Ciphertext::new(10u32, 14u32));
        let json = serde_json::to_string(&CiphertextFile::from(&ct)).unwrap();
        assert_eq!(json, r#"{"scheme":"elgamal","c1":"a","c2":"e"}"#);

        let ct = AnyCiphertext::Ceg(CegCiphertext::new(
            vec![Ciphertext::new(2u32, 21u32), Ciphertext::new(10u32, 12u32)],
            0,
        ));
        let json = serde_json::to_string(&CiphertextFile::from(&ct)).unwrap();
        assert_eq!(
            json,
            r#"{"scheme":"ceg","pairs":[{"c1":"2","c2":"15"},{"c1":"a","c2":"c"}],"add_count":0}"#
        );
        let back: CiphertextFile = serde_json::from_str(&json).unwrap();
        assert_eq!(AnyCiphertext::from(&back), ct);
    }

    #[test]
    fn key_file_scheme_and_basis_must_agree() {
        let json = r#"{"scheme":"elgamal","n":"17","g":"5","h":"8","d":["3","5"]}"#;
        let file: KeyFile = serde_json::from_str(json).unwrap();
        assert!(file.public_key().is_err());
        let json = r#"{"scheme":"ceg","n":"17","g":"5","h":"8"}"#;
        let file: KeyFile = serde_json::from_str(json).unwrap();
        assert!(file.public_key().is_err());
        let json = r#"{"scheme":"ceg","n":"17","g":"5","h":"8","d":["3","5"]}"#;
        let file: KeyFile = serde_json::from_str(json).unwrap();
        assert!(matches!(file.public_key().unwrap(), PublicKey::Ceg(_)));
        assert!(file.secret_key().is_err());
    }
}

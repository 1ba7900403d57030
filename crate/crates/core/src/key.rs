use crate::chaos::{hash_to_params, ChaoticParams, Digest};
use crate::error::{Error, Result};

const PERM_TAG: &[u8] = b"perm";
const CONF_TAG: &[u8] = b"conf";
const MASK_TAG: &[u8] = b"faps";

/// Master digest plus the domain-separated initial parameters of each keyed stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KeyMaterial {
    pub master: Digest,
    pub perm_init: ChaoticParams,
    pub conf_init: ChaoticParams,
    pub mask_init: ChaoticParams,
}

/// `master = SHA-256(key)`; each stage seed is `hash_to_params(SHA-256(master || tag))`.
pub fn derive_key_material(key_bytes: &[u8]) -> Result<KeyMaterial> {
    if key_bytes.is_empty() {
        return Err(Error::EmptyKey);
    }
    let master = Digest::of(key_bytes);
    let stage = |tag: &[u8]| hash_to_params(&Digest::of_parts(&[&master.0, tag]));
    Ok(KeyMaterial {
        master,
        perm_init: stage(PERM_TAG),
        conf_init: stage(CONF_TAG),
        mask_init: stage(MASK_TAG),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_key_rejected() {
        assert_eq!(derive_key_material(b""), Err(Error::EmptyKey));
        assert_eq!(Error::EmptyKey.to_string(), "empty key");
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            derive_key_material(b"hunter2").unwrap(),
            derive_key_material(b"hunter2").unwrap()
        );
    }

    #[test]
    fn stages_are_separated() {
        let km = derive_key_material(b"k").unwrap();
        assert_ne!(km.perm_init, km.conf_init);
        assert_ne!(km.perm_init, km.mask_init);
        assert_ne!(km.conf_init, km.mask_init);
        for p in [km.perm_init, km.conf_init, km.mask_init] {
            assert!(p.r() >= 3.9 && p.r() < 4.0);
        }
    }
}

//! On-disk cache for conversion matrices, keyed by atlas hash, family
//! bound, and orbit mode. `GSURF_CACHE_DIR` overrides the location.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;

use gsurf_core::atlas::Atlas;
use gsurf_core::conv::{ConversionSet, IntMatrix, OrbitMode};

use crate::CliError;

pub fn cache_dir() -> PathBuf {
    if let Ok(dir) = std::env::var("GSURF_CACHE_DIR") {
        return PathBuf::from(dir);
    }
    PathBuf::from(".gsurf-cache")
}

fn set_dir(base: &PathBuf, atlas_hash: &str, t: u8, mode: OrbitMode) -> PathBuf {
    base.join(format!("{atlas_hash}-t{t}-{}", mode.as_str()))
}

/// Write every matrix of the set under `dir`.
pub fn write_set(dir: &PathBuf, set: &ConversionSet) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    let emit = |name: String, m: &IntMatrix| -> Result<(), CliError> {
        let mut w = BufWriter::new(File::create(dir.join(format!("{name}.txt")))?);
        ConversionSet::write_matrix(&mut w, m, &name, &set.atlas_hash, set.t, set.mode)?;
        Ok(())
    };
    for s in 1..=set.t {
        emit(format!("U_{s}"), &set.family_gross[s as usize - 1])?;
        emit(format!("U_{s}_inv"), &set.family_inverse[s as usize - 1])?;
    }
    emit("U_tilde".into(), &set.inter_gross)?;
    emit("W_tilde".into(), &set.inter_net)?;
    Ok(())
}

fn read_one(
    path: PathBuf,
    ids: Vec<gsurf_core::atlas::GraphletId>,
    want_hash: &str,
) -> Option<IntMatrix> {
    let f = File::open(path).ok()?;
    let (m, hash) = ConversionSet::read_matrix(&mut BufReader::new(f), ids).ok()?;
    if hash == want_hash {
        Some(m)
    } else {
        None
    }
}

/// Load a cached set or build and cache it. Cached matrices are checked
/// structurally; corruption is a hard verification failure rather than a
/// silent rebuild.
pub fn load_or_build(
    atlas: &Atlas,
    t: u8,
    mode: OrbitMode,
) -> Result<(ConversionSet, bool), CliError> {
    let hash = atlas.hash();
    let dir = set_dir(&cache_dir(), &hash, t, mode);
    if dir.is_dir() {
        if let Some(set) = try_load(atlas, t, mode, &dir, &hash) {
            validate(&set, &dir)?;
            return Ok((set, true));
        }
    }
    let set = ConversionSet::build(atlas, t, mode)
        .map_err(|e| CliError::Verification(e.to_string()))?;
    write_set(&dir, &set)?;
    Ok((set, false))
}

/// Exact structural checks on a loaded set: per-family involution, identity
/// diagonal blocks of the net matrix, and gross diagonal blocks matching.
fn validate(set: &ConversionSet, dir: &std::path::Path) -> Result<(), CliError> {
    let fail = |msg: String| {
        Err(CliError::Verification(format!(
            "cached matrices at {} are corrupt: {msg}",
            dir.display()
        )))
    };
    let mut base = 0usize;
    for s in 1..=set.t {
        let u = &set.family_gross[s as usize - 1];
        let inv = &set.family_inverse[s as usize - 1];
        if !inv.mul(u).is_identity() {
            return fail(format!("inverse of the family-{s} matrix fails the product check"));
        }
        let k = u.n();
        for i in 0..k {
            for j in 0..k {
                if set.inter_gross.get(base + i, base + j) != u.get(i, j) {
                    return fail(format!("family-{s} block of the gross matrix differs"));
                }
                let want = i64::from(i == j);
                if set.inter_net.get(base + i, base + j) != want {
                    return fail(format!("family-{s} net diagonal block is not the identity"));
                }
            }
        }
        base += k;
    }
    for i in 0..set.inter_net.n() {
        for j in 0..set.inter_net.n() {
            if set.inter_net.get(i, j) < 0 {
                return fail("negative net entry".into());
            }
        }
    }
    Ok(())
}

fn try_load(
    atlas: &Atlas,
    t: u8,
    mode: OrbitMode,
    dir: &PathBuf,
    hash: &str,
) -> Option<ConversionSet> {
    let ids_for = |s: u8| -> Vec<gsurf_core::atlas::GraphletId> {
        match mode {
            OrbitMode::Orbit => atlas.orbit_ids(s).into_iter().filter(|i| i.s == s).collect(),
            OrbitMode::Hatted => atlas
                .pattern_ids(s)
                .into_iter()
                .filter(|i| i.s == s)
                .collect(),
        }
    };
    let all_ids = match mode {
        OrbitMode::Orbit => atlas.orbit_ids(t),
        OrbitMode::Hatted => atlas.pattern_ids(t),
    };
    let mut family_gross = Vec::new();
    let mut family_inverse = Vec::new();
    for s in 1..=t {
        family_gross.push(read_one(dir.join(format!("U_{s}.txt")), ids_for(s), hash)?);
        family_inverse.push(read_one(
            dir.join(format!("U_{s}_inv.txt")),
            ids_for(s),
            hash,
        )?);
    }
    let inter_gross = read_one(dir.join("U_tilde.txt"), all_ids.clone(), hash)?;
    let inter_net = read_one(dir.join("W_tilde.txt"), all_ids, hash)?;
    Some(ConversionSet {
        t,
        mode,
        atlas_hash: hash.to_string(),
        family_gross,
        family_inverse,
        inter_gross,
        inter_net,
    })
}

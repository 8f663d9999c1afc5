//! Run manifest emitted alongside every output file: the exact command
//! line, the seed in effect, the crate version and a sha256 per output,
//! so any artifact can be re-derived and checked byte for byte.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub seed: Option<u64>,
    pub version: &'static str,
    pub outputs: Vec<OutputRecord>,
}

#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub path: PathBuf,
    pub sha256: String,
    pub bytes: usize,
}

/// Writes `data` to `path` plus a `<path>.manifest.json` next to it.
pub fn write_with_manifest(
    path: &Path,
    data: &[u8],
    seed: Option<u64>,
) -> std::io::Result<()> {
    std::fs::write(path, data)?;
    let digest = Sha256::digest(data);
    let manifest = RunManifest {
        command: std::env::args().collect::<Vec<_>>().join(" "),
        seed,
        version: env!("CARGO_PKG_VERSION"),
        outputs: vec![OutputRecord {
            path: path.to_path_buf(),
            sha256: hex::encode(digest),
            bytes: data.len(),
        }],
    };
    let manifest_path = {
        let mut os = path.as_os_str().to_owned();
        os.push(".manifest.json");
        PathBuf::from(os)
    };
    std::fs::write(
        manifest_path,
        serde_json::to_string_pretty(&manifest).expect("manifest serializes"),
    )
}

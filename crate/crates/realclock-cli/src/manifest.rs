//! Output manifest: one `<sha256>  <filename>` line per emitted file,
//! sorted by filename, hashing exactly the bytes written to disk.

use sha2::{Digest, Sha256};

pub fn render_manifest(files: &[(String, String)]) -> String {
    let mut entries: Vec<(String, String)> = files
        .iter()
        .map(|(name, content)| {
            let mut hasher = Sha256::new();
            hasher.update(content.as_bytes());
            (format!("{:x}", hasher.finalize()), name.clone())
        })
        .collect();
    entries.sort_by(|a, b| a.1.cmp(&b.1));
    let mut out = String::new();
    for (hash, name) in entries {
        out.push_str(&hash);
        out.push_str("  ");
        out.push_str(&name);
        out.push('\n');
    }
    out
}

//! Static HTTP server for an output directory: datasets, manifest and the
//! explorer page.

use std::fs;
use std::io;
use std::net::{SocketAddr, ToSocketAddrs};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::thread::{self, JoinHandle};

use thiserror::Error;
use tiny_http::{Header, Method, Request, Response, StatusCode};

use crate::export::MANIFEST_FILE;

/// Served at `/` when the directory has no `index.html` of its own.
pub const FALLBACK_INDEX: &str = include_str!("../assets/index.html");

#[derive(Debug, Error)]
pub enum ServeError {
    #[error("{0} has no manifest.json; run `analyze` first")]
    MissingManifest(PathBuf),
    #[error("cannot bind {addr}: {reason}")]
    Bind { addr: String, reason: String },
}

pub struct Server {
    root: PathBuf,
    http: Arc<tiny_http::Server>,
}

impl Server {
    pub fn bind(root: &Path, addr: impl ToSocketAddrs + std::fmt::Debug) -> Result<Self, ServeError> {
        if !root.join(MANIFEST_FILE).is_file() {
            return Err(ServeError::MissingManifest(root.to_path_buf()));
        }
        let label = format!("{addr:?}");
        let http = tiny_http::Server::http(addr).map_err(|e| ServeError::Bind {
            addr: label,
            reason: e.to_string(),
        })?;
        Ok(Self {
            root: root.to_path_buf(),
            http: Arc::new(http),
        })
    }

    pub fn local_addr(&self) -> Option<SocketAddr> {
        self.http.server_addr().to_ip()
    }

    /// Serves requests on `workers` threads until [`ServerHandle::stop`] is
    /// called or the process ends.
    pub fn spawn(self, workers: usize) -> ServerHandle {
        let root = Arc::new(self.root);
        let threads = (0..workers.max(1))
            .map(|_| {
                let http = Arc::clone(&self.http);
                let root = Arc::clone(&root);
                thread::spawn(move || {
                    for request in http.incoming_requests() {
                        if let Err(e) = respond(&root, request) {
                            eprintln!("serve: {e}");
                        }
                    }
                })
            })
            .collect();
        ServerHandle {
            http: self.http,
            threads,
        }
    }

    /// Blocks serving requests.
    pub fn run(self, workers: usize) {
        self.spawn(workers).join();
    }
}

pub struct ServerHandle {
    http: Arc<tiny_http::Server>,
    threads: Vec<JoinHandle<()>>,
}

impl ServerHandle {
    pub fn local_addr(&self) -> Option<SocketAddr> {
        self.http.server_addr().to_ip()
    }

    pub fn stop(self) {
        for _ in &self.threads {
            self.http.unblock();
        }
        self.join();
    }

    fn join(self) {
        for t in self.threads {
            let _ = t.join();
        }
    }
}

pub fn content_type(path: &Path) -> &'static str {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => "application/json",
        Some("html") => "text/html; charset=utf-8",
        Some("js") | Some("mjs") => "text/javascript; charset=utf-8",
        Some("css") => "text/css; charset=utf-8",
        Some("svg") => "image/svg+xml",
        Some("png") => "image/png",
        Some("ico") => "image/x-icon",
        Some("txt") => "text/plain; charset=utf-8",
        _ => "application/octet-stream",
    }
}

/// Maps a request path onto a file under `root`, rejecting traversal.
fn resolve(root: &Path, url: &str) -> Option<PathBuf> {
    let path = url.split(['?', '#']).next().unwrap_or("");
    let rel = path.trim_start_matches('/');
    let rel = if rel.is_empty() { "index.html" } else { rel };
    if rel.contains('\\') || rel.split('/').any(|seg| seg.is_empty() || seg == "." || seg == "..") {
        return None;
    }
    Some(root.join(rel))
}

fn header(name: &str, value: &str) -> Header {
    Header::from_bytes(name.as_bytes(), value.as_bytes()).expect("static header is valid")
}

fn respond(root: &Path, request: Request) -> io::Result<()> {
    if !matches!(request.method(), Method::Get | Method::Head) {
        return request.respond(Response::from_string("method not allowed").with_status_code(405));
    }
    let Some(path) = resolve(root, request.url()) else {
        return request.respond(Response::from_string("not found").with_status_code(404));
    };

    let body = match fs::read(&path) {
        Ok(bytes) => bytes,
        Err(_) if path == root.join("index.html") => FALLBACK_INDEX.as_bytes().to_vec(),
        Err(e) if e.kind() == io::ErrorKind::NotFound => {
            return request.respond(Response::from_string("not found").with_status_code(404));
        }
        Err(_) if path.is_dir() => {
            return request.respond(Response::from_string("not found").with_status_code(404));
        }
        Err(e) => {
            let _ = request.respond(Response::from_string("internal error").with_status_code(500));
            return Err(e);
        }
    };
    let response = Response::from_data(body)
        .with_status_code(StatusCode(200))
        .with_header(header("Content-Type", content_type(&path)))
        .with_header(header("Cache-Control", "no-cache"));
    request.respond(response)
}

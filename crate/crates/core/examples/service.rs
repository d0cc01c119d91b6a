//! Starts the HTTP service on a free local port and calls each endpoint
//! with a plain HTTP/1.1 client. Pass `--serve` to keep it running on
//! 127.0.0.1:8080 instead.
//!
//!     cargo run --example service

use std::io::{Read, Write};
use std::net::TcpStream;

use techrace::scenario::PresetCatalog;
use techrace::service::{serve_on, ServiceConfig};

fn request(addr: std::net::SocketAddr, method: &str, path: &str, body: &str) -> std::io::Result<String> {
    let mut stream = TcpStream::connect(addr)?;
    write!(
        stream,
        "{method} {path} HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )?;
    let mut response = String::new();
    stream.read_to_string(&mut response)?;
    Ok(response)
}

fn status_and_body(response: &str) -> (&str, &str) {
    let status = response.lines().next().unwrap_or_default();
    let body = response.split_once("\r\n\r\n").map_or("", |(_, b)| b);
    (status, body)
}

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let keep_running = std::env::args().any(|a| a == "--serve");
    let bind = if keep_running { "127.0.0.1:8080" } else { "127.0.0.1:0" };
    let listener = tokio::net::TcpListener::bind(bind).await?;
    let addr = listener.local_addr()?;
    let server = tokio::spawn(serve_on(listener, PresetCatalog::load()?, ServiceConfig::default()));
    println!("listening on http://{addr}");
    if keep_running {
        server.await??;
        return Ok(());
    }

    let params = serde_json::to_string(&PresetCatalog::load()?.build_preset("limited/baseline/no-opp")?)?;
    let calls = [
        ("GET", "/api/presets", String::new()),
        ("POST", "/api/evaluate", format!(r#"{{"params": {params}, "resolution": 1}}"#)),
        ("POST", "/api/sweep", r#"{"parameter": "eta", "values": [1, 2, 3, 4, 5]}"#.to_string()),
        ("POST", "/api/montecarlo", format!(r#"{{"params": {params}, "trials": 20000, "seed": 7}}"#)),
        ("POST", "/api/evaluate", r#"{"params": {"p0": 20}}"#.to_string()),
    ];
    for (method, path, body) in calls {
        let response = tokio::task::spawn_blocking(move || request(addr, method, path, &body)).await??;
        let (status, body) = status_and_body(&response);
        let shown: String = body.chars().take(400).collect();
        println!("{method} {path} -> {status}\n{shown}{}\n", if body.len() > 400 { " ..." } else { "" });
    }
    server.abort();
    Ok(())
}

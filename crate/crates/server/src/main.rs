use clap::Parser;

/// Standalone evaluation service.
#[derive(Parser)]
#[command(name = "fsdem-server", version, about)]
struct Args {
    /// Address to bind.
    #[arg(long, default_value = "127.0.0.1")]
    address: String,

    /// Port to listen on.
    #[arg(long, default_value_t = 7878)]
    port: u16,
}

#[tokio::main]
async fn main() {
    let args = Args::parse();
    let bind = format!("{}:{}", args.address, args.port);
    let listener = match tokio::net::TcpListener::bind(&bind).await {
        Ok(listener) => listener,
        Err(e) => {
            eprintln!("failed to bind {bind}: {e}");
            std::process::exit(1);
        }
    };
    println!("fsdem-server listening on http://{bind}");
    if let Err(e) = axum::serve(listener, fsdem_server::router()).await {
        eprintln!("server error: {e}");
        std::process::exit(1);
    }
}

#pragma once

#include "rampforge/modelbook.hpp"
#include "rampforge/session.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

namespace rampforge {

struct ApiResponse {
    int status = 200;
    std::string body; // JSON
};

/// HTTP handlers as pure functions over an immutable model book. Session
/// state travels in requests and is sealed with an HMAC keyed by the model
/// book, so any server holding the same book accepts it.
class ApiService {
public:
    explicit ApiService(ModelBook book);

    ApiResponse health() const;
    ApiResponse models() const;
    ApiResponse seed(std::string_view request_body) const;
    ApiResponse transform(std::string_view request_body) const;

    const ModelBook& book() const { return book_; }
    std::string seal(const RampState& state) const;

private:
    ModelBook book_;
    std::string key_;
};

/// Neutral seed for a model's catalog preview: the sRGB gray nearest the
/// model's middle L*. A single fixed gray pushes steep profiles past L* 100.
std::string preview_seed_hex(const RampModel& model);

struct ServerOptions {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::filesystem::path static_dir; // empty: no static mount
};

/// The API over HTTP. Port 0 binds an ephemeral port; stop() may be called
/// from any thread.
class HttpServer {
public:
    HttpServer(const ApiService& service, ServerOptions options);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// False if the address cannot be bound or the static directory is missing.
    bool bind();
    /// Bound port, or -1 before bind().
    int port() const { return port_; }
    /// Blocks until stop().
    void serve();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    ServerOptions options_;
    int port_ = -1;
};

/// Blocks until the server stops. Returns false if the port cannot be bound.
bool run_server(const ApiService& service, const ServerOptions& options);

} // namespace rampforge

#pragma once

#include <atomic>
#include <csignal>
#include <functional>

#include "tabula/core/http.hpp"
#include "tabula/service/api.hpp"

namespace tabula::service {

inline ApiRequest to_api_request(const httplib::Request& req) {
    ApiRequest r;
    r.method = req.method;
    r.path = req.path;
    if (!req.params.empty()) {
        std::string q;
        for (const auto& [k, v] : req.params) q += (q.empty() ? "" : "&") + k + "=" + v;
        r.path += "?" + q;
    }
    r.body = req.body;
    r.content_type = req.get_header_value("Content-Type");
    r.accept = req.get_header_value("Accept");
    for (const auto& [field, part] : req.files) r.files.push_back({field, part.filename, part.content});
    return r;
}

// Routes every request through `api`. Listening starts on bind_and_listen.
inline void install_routes(httplib::Server& srv, Api& api) {
    const auto handler = [&api](const httplib::Request& req, httplib::Response& res) {
        const auto out = api.handle(to_api_request(req));
        res.status = out.status;
        res.set_content(out.body, out.content_type);
    };
    srv.Get(".*", handler);
    srv.Post(".*", handler);
    srv.Put(".*", handler);
    srv.Delete(".*", handler);
    srv.Patch(".*", handler);
}

namespace detail {
inline std::atomic<httplib::Server*> active_server{nullptr};
extern "C" inline void stop_on_signal(int) {
    if (auto* s = active_server.load()) s->stop();
}
}  // namespace detail

// Serves until SIGINT/SIGTERM, then lets running jobs finish.
inline int serve(Api& api, const std::function<void(int port)>& on_ready = {}) {
    httplib::Server srv;
    install_routes(srv, api);
    srv.new_task_queue = [threads = api.config().threads] {
        return new httplib::ThreadPool(static_cast<std::size_t>(std::max(1, threads)));
    };
    const auto& cfg = api.config();
    int port = cfg.port;
    if (port == 0) {
        port = srv.bind_to_any_port(cfg.host);
    } else if (!srv.bind_to_port(cfg.host, port)) {
        port = -1;
    }
    if (port < 0) fail(ErrorCode::Io, "cannot bind " + cfg.host + ":" + std::to_string(cfg.port));
    detail::active_server = &srv;
    std::signal(SIGINT, detail::stop_on_signal);
    std::signal(SIGTERM, detail::stop_on_signal);
    if (on_ready) on_ready(port);
    srv.listen_after_bind();
    detail::active_server = nullptr;
    api.drain();
    return 0;
}

}  // namespace tabula::service

#include "aflux/server.hpp"

#include "httplib.h"

#include "aflux/errors.hpp"

namespace aflux {

struct SimulatorServer::Impl {
    httplib::Server server;
};

SimulatorServer::SimulatorServer(Dataset dataset, int port, std::string host)
    : simulator_(std::make_unique<Simulator>(std::move(dataset))),
      impl_(std::make_unique<Impl>()),
      host_(std::move(host)) {
    Simulator* sim = simulator_.get();
    impl_->server.Get(".*", [sim](const httplib::Request& req, httplib::Response& res) {
        SimResponse out = sim->handle(req.method, req.target);
        res.status = out.status;
        for (const auto& [name, value] : out.headers) res.set_header(name, value);
        res.set_content(out.body, out.content_type);
    });

    if (port == 0) {
        port_ = impl_->server.bind_to_any_port(host_);
        if (port_ < 0) throw TransportError("could not bind a port on " + host_, 1);
    } else {
        if (!impl_->server.bind_to_port(host_, port))
            throw TransportError("could not bind port " + std::to_string(port) + " on " + host_,
                                 1);
        port_ = port;
    }
    thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
}

SimulatorServer::~SimulatorServer() { stop(); }

std::string SimulatorServer::root() const {
    return "http://" + host_ + ":" + std::to_string(port_);
}

void SimulatorServer::stop() {
    if (thread_.joinable()) {
        impl_->server.stop();
        thread_.join();
    }
}

}  // namespace aflux

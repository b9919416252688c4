#ifndef AFLUX_SERVER_HPP
#define AFLUX_SERVER_HPP

#include <memory>
#include <string>
#include <thread>

#include "aflux/simulator.hpp"

namespace aflux {

/// Serves a Simulator over HTTP on a background thread. Port 0 binds an
/// ephemeral port (resolved before the constructor returns).
class SimulatorServer {
  public:
    explicit SimulatorServer(Dataset dataset, int port = 0,
                             std::string host = "127.0.0.1");
    ~SimulatorServer();

    SimulatorServer(const SimulatorServer&) = delete;
    SimulatorServer& operator=(const SimulatorServer&) = delete;

    int port() const { return port_; }
    std::string root() const;
    const Simulator& simulator() const { return *simulator_; }
    /// Requests that reached the simulator (one per HTTP request).
    std::size_t requests() const { return simulator_->requests(); }

    void stop();

  private:
    struct Impl;
    std::unique_ptr<Simulator> simulator_;
    std::unique_ptr<Impl> impl_;
    std::thread thread_;
    std::string host_;
    int port_ = 0;
};

}  // namespace aflux

#endif  // AFLUX_SERVER_HPP

// Copyright 2026 The Scaffold Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "scaffold/config.hpp"
#include "scaffold/session.hpp"

namespace scaffold {

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
};

// The HTTP surface over one SessionEngine. handle() is transport-free so the
// routing can be exercised without sockets; serve() puts it behind
// cpp-httplib.
class Service {
 public:
  // Loads topics, corpus or remote adapter and blacklist, then recovers every
  // session found in the log directory.
  explicit Service(ServiceConfig config, std::unique_ptr<Clock> clock = nullptr);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  ApiResponse handle(std::string_view method, std::string_view path, std::string_view body);

  // Binds the configured address; port 0 picks a free port. Returns the port.
  int bind();
  // Blocks until stop().
  void listen();
  void stop();

  SessionEngine& engine();
  std::size_t recovered() const { return recovered_; }
  const ServiceConfig& config() const { return config_; }

 private:
  struct Impl;
  ServiceConfig config_;
  std::unique_ptr<Impl> impl_;
  std::size_t recovered_ = 0;
};

}  // namespace scaffold

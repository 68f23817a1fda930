#include <cstdlib>

#include <json.hpp>

#include "autota/agents.hpp"
#include "autota/error.hpp"

#ifndef AUTOTA_NO_REMOTE
#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#endif

namespace autota::agents {

RemoteBackend::RemoteBackend(const BackendConfig& cfg) : cfg_(cfg) {
    if (cfg_.endpoint.empty()) {
        throw Error(ErrorKind::ConfigError, "remote backend needs an endpoint");
    }
}

#ifdef AUTOTA_NO_REMOTE

std::string RemoteBackend::complete(const CallContext&, const std::string&) {
    throw Error(ErrorKind::BackendUnavailable, "remote backend support compiled out");
}

#else

namespace {

std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    std::size_t scheme = endpoint.find("://");
    if (scheme == std::string::npos) {
        throw Error(ErrorKind::ConfigError, "endpoint must include a scheme: " + endpoint);
    }
    std::size_t path = endpoint.find('/', scheme + 3);
    if (path == std::string::npos) return {endpoint, "/"};
    return {endpoint.substr(0, path), endpoint.substr(path)};
}

} // namespace

std::string RemoteBackend::complete(const CallContext& ctx, const std::string& prompt) {
    auto [base, path] = split_endpoint(cfg_.endpoint);
    httplib::Client client(base);
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(120, 0);

    httplib::Headers headers;
    if (const char* key = std::getenv(cfg_.api_key_env.c_str()); key != nullptr && *key != '\0') {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    nlohmann::json body = {
        {"model", cfg_.model},
        {"temperature", cfg_.temperature},
        {"messages", nlohmann::json::array({nlohmann::json{{"role", "user"}, {"content", prompt}}})},
    };
    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res) {
        throw Error(ErrorKind::BackendUnavailable,
                    "endpoint unreachable for stage '" + ctx.stage + "': " + cfg_.endpoint);
    }
    if (res->status != 200) {
        throw Error(ErrorKind::BackendUnavailable,
                    "endpoint returned status " + std::to_string(res->status) + " for stage '" +
                        ctx.stage + "'");
    }
    try {
        auto parsed = nlohmann::json::parse(res->body);
        std::string content = parsed.at("choices").at(0).at("message").at("content").get<std::string>();
        if (content.empty()) {
            throw Error(ErrorKind::UnparseableResponse, "endpoint returned an empty completion");
        }
        return content;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::UnparseableResponse,
                    std::string("bad chat-completion payload: ") + e.what());
    }
}

#endif

} // namespace autota::agents

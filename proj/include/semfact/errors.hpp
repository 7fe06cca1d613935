#pragma once

#include <stdexcept>
#include <string>

namespace semfact {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedRecord : public Error {
public:
    MalformedRecord(std::string id, const std::string& reason)
        : Error("malformed record '" + id + "': " + reason), id_(std::move(id)) {}
    const std::string& id() const { return id_; }

private:
    std::string id_;
};

class DuplicateId : public Error {
public:
    explicit DuplicateId(std::string id)
        : Error("duplicate record id '" + id + "'"), id_(std::move(id)) {}
    const std::string& id() const { return id_; }

private:
    std::string id_;
};

class EmptyCorpus : public Error {
public:
    EmptyCorpus() : Error("cannot fit a TF-IDF model on an empty segment list") {}
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class SpanOutOfRange : public Error {
public:
    using Error::Error;
};

class MissingBinary : public Error {
public:
    using Error::Error;
};

class InvalidDistribution : public Error {
public:
    using Error::Error;
};

class IdMismatch : public Error {
public:
    using Error::Error;
};

class MissingGoldVerdict : public Error {
public:
    using Error::Error;
};

// Transport-level failures raised by remote backends.
class BackendError : public Error {
public:
    using Error::Error;
};

class Timeout : public BackendError {
public:
    using BackendError::BackendError;
};

class BadStatus : public BackendError {
public:
    explicit BadStatus(int status)
        : BackendError("backend returned HTTP status " + std::to_string(status)), status_(status) {}
    int status() const { return status_; }

private:
    int status_ = 0;
};

class SchemaError : public BackendError {
public:
    using BackendError::BackendError;
};

// Raised by the pipeline when a scoring backend cannot serve a stage.
class BackendUnavailable : public Error {
public:
    BackendUnavailable(std::string stage, const std::string& detail)
        : Error("backend unavailable at stage '" + stage + "': " + detail), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

}  // namespace semfact

#pragma once

#include <stdexcept>
#include <string>

namespace kmseed {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class FileNotFoundError : public Error {
public:
    explicit FileNotFoundError(const std::string& path)
        : Error("file not found: " + path) {}
};

/// A CSV row whose cell count disagrees with the first data row.
class RaggedRowsError : public Error {
public:
    RaggedRowsError(std::size_t line, std::size_t expected, std::size_t got)
        : Error("ragged row at line " + std::to_string(line) + ": expected " +
                std::to_string(expected) + " cells, got " + std::to_string(got)),
          line(line) {}
    std::size_t line;
};

/// A CSV cell that does not parse as a finite real.
class NonNumericCellError : public Error {
public:
    NonNumericCellError(std::size_t line, std::size_t column, const std::string& cell)
        : Error("non-numeric cell \"" + cell + "\" at line " + std::to_string(line) +
                ", column " + std::to_string(column)),
          line(line), column(column), cell(cell) {}
    std::size_t line;
    std::size_t column;
    std::string cell;
};

/// An empty CSV cell. Missing values are rejected, never imputed.
class MissingValueError : public Error {
public:
    MissingValueError(std::size_t line, std::size_t column)
        : Error("missing value at line " + std::to_string(line) + ", column " +
                std::to_string(column)),
          line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

class DimensionMismatchError : public Error {
public:
    DimensionMismatchError(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) +
                ", got " + std::to_string(got)) {}
};

class IndexOutOfRangeError : public Error {
public:
    IndexOutOfRangeError(const std::string& what) : Error(what) {}
};

class KExceedsNError : public Error {
public:
    KExceedsNError(std::size_t k, std::size_t n)
        : Error("k (" + std::to_string(k) + ") exceeds number of records (" +
                std::to_string(n) + ")") {}
};

class EmptyPartitionError : public Error {
public:
    EmptyPartitionError() : Error("empty partition") {}
};

/// Brute-force enumeration refused: instance above the hard size cap.
class InstanceTooLargeError : public Error {
public:
    InstanceTooLargeError(std::size_t n, std::size_t cap)
        : Error("instance too large for exhaustive enumeration: n = " +
                std::to_string(n) + " > " + std::to_string(cap)) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

class UnknownFormatError : public Error {
public:
    explicit UnknownFormatError(const std::string& name)
        : Error("unknown report format: " + name) {}
};

class EmptyReportError : public Error {
public:
    EmptyReportError() : Error("report has no cells") {}
};

/// Ranking request mixes SSE values from different spaces.
class IncomparableCellsError : public Error {
public:
    explicit IncomparableCellsError(const std::string& what) : Error(what) {}
};

/// A registry-described dataset whose file does not match its descriptor.
class DatasetMismatchError : public Error {
public:
    explicit DatasetMismatchError(const std::string& what) : Error(what) {}
};

class InvalidArgumentError : public Error {
public:
    explicit InvalidArgumentError(const std::string& what) : Error(what) {}
};

}  // namespace kmseed

#include "fujita/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace fujita {

std::string format_compact(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("format_compact: conversion failed");
    return std::string(buf, ptr);
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(std::string path, std::vector<std::string> header) : impl_(new Impl) {
    impl_->out.open(path, std::ios::binary);  // binary keeps '\n' endings everywhere
    if (!impl_->out) {
        delete impl_;
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        impl_->out << (i ? "," : "") << header[i];
    }
    impl_->out << '\n';
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        impl_->out << (i ? "," : "") << format_full(values[i]);
    }
    impl_->out << '\n';
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        impl_->out << (i ? "," : "") << cells[i];
    }
    impl_->out << '\n';
}

void write_key_values(const std::string& path,
                      const std::vector<std::pair<std::string, std::string>>& items) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    for (const auto& [key, value] : items) {
        out << key << " = " << value << '\n';
    }
}

}  // namespace fujita

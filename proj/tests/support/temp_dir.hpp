#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

namespace testgen {

// Scratch directory removed on destruction.
struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag = "asplag") {
        static int counter = 0;
        path = std::filesystem::temp_directory_path() /
               (tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    TempDir(const TempDir&)            = delete;
    TempDir& operator=(const TempDir&) = delete;

    void write(const std::filesystem::path& rel, const std::string& text) const {
        std::filesystem::create_directories((path / rel).parent_path());
        std::ofstream(path / rel) << text;
    }
    std::string read(const std::filesystem::path& rel) const {
        std::ifstream in(path / rel, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), {}};
    }
};

} // namespace testgen

/*
Copyright 2026 The LTL Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

   http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include "ltl/mesh.hpp"

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace ltl
{

enum class MeshFormat { OFF, OBJ };

/** @brief Raised for malformed mesh text; carries the 1-based line number */
class ParseError : public MeshError
{
public:
    ParseError(std::size_t line, const std::string& msg)
        : MeshError("line " + std::to_string(line) + ": " + msg), line_{line}
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

namespace detail
{

/** Splits text into whitespace tokens, tracking source lines and skipping '#' comments */
class LineTokens
{
public:
    explicit LineTokens(std::string_view text) : text_{text} {}

    /** Advance to the next non-empty line; false at end of input */
    bool next_line()
    {
        while (pos_ < text_.size()) {
            auto end = text_.find('\n', pos_);
            if (end == std::string_view::npos) {
                end = text_.size();
            }
            auto line = text_.substr(pos_, end - pos_);
            pos_ = end + 1;
            ++line_no_;
            if (auto hash = line.find('#'); hash != std::string_view::npos) {
                line = line.substr(0, hash);
            }
            tokens_.clear();
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && is_space(line[i])) {
                    ++i;
                }
                auto j = i;
                while (j < line.size() && !is_space(line[j])) {
                    ++j;
                }
                if (j > i) {
                    tokens_.push_back(line.substr(i, j - i));
                }
                i = j;
            }
            if (!tokens_.empty()) {
                return true;
            }
        }
        return false;
    }

    const std::vector<std::string_view>& tokens() const noexcept { return tokens_; }
    std::size_t line() const noexcept { return line_no_; }

private:
    static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

    std::string_view text_;
    std::size_t pos_{0};
    std::size_t line_no_{0};
    std::vector<std::string_view> tokens_;
};

inline double parse_double(std::string_view tok, std::size_t line)
{
    double value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(line, "expected a number, got '" + std::string(tok) + "'");
    }
    return value;
}

inline Index parse_index(std::string_view tok, std::size_t line)
{
    Index value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
    }
    return value;
}

inline Mesh build_checked(std::vector<Vec3> vertices, std::vector<Face> faces,
                          const std::vector<std::size_t>& face_lines)
{
    const auto nv = static_cast<Index>(vertices.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        for (auto i : faces[f]) {
            if (i < 0 || i >= nv) {
                throw ParseError(face_lines[f], "dangling vertex index " + std::to_string(i));
            }
        }
    }
    // Let the mesh report topology problems, then attribute them to a line if possible.
    try {
        return Mesh(std::move(vertices), std::move(faces));
    } catch (const MeshError& e) {
        std::string msg = e.what();
        if (msg.rfind("face ", 0) == 0) {
            auto colon = msg.find(':');
            auto f = std::stoul(msg.substr(5, colon - 5));
            throw ParseError(face_lines[f], msg.substr(colon + 2));
        }
        throw;
    }
}

inline Mesh parse_off(std::string_view text)
{
    LineTokens in(text);
    if (!in.next_line() || in.tokens().front() != "OFF") {
        throw ParseError(in.line() == 0 ? 1 : in.line(), "missing OFF header");
    }
    std::vector<std::string_view> counts(in.tokens().begin() + 1, in.tokens().end());
    if (counts.empty()) {
        if (!in.next_line()) {
            throw ParseError(in.line(), "missing element counts");
        }
        counts = in.tokens();
    }
    if (counts.size() < 2 || counts.size() > 3) {
        throw ParseError(in.line(), "expected 'nv nf ne'");
    }
    const auto nv = parse_index(counts[0], in.line());
    const auto nf = parse_index(counts[1], in.line());
    if (nv < 0 || nf < 0) {
        throw ParseError(in.line(), "negative element count");
    }

    std::vector<Vec3> vertices;
    vertices.reserve(static_cast<std::size_t>(nv));
    for (Index i = 0; i < nv; ++i) {
        if (!in.next_line()) {
            throw ParseError(in.line(), "unexpected end of file in vertex list");
        }
        const auto& t = in.tokens();
        if (t.size() < 3) {
            throw ParseError(in.line(), "vertex needs 3 coordinates");
        }
        vertices.emplace_back(parse_double(t[0], in.line()), parse_double(t[1], in.line()),
                              parse_double(t[2], in.line()));
    }

    std::vector<Face> faces;
    std::vector<std::size_t> lines;
    faces.reserve(static_cast<std::size_t>(nf));
    for (Index i = 0; i < nf; ++i) {
        if (!in.next_line()) {
            throw ParseError(in.line(), "unexpected end of file in face list");
        }
        const auto& t = in.tokens();
        const auto k = parse_index(t[0], in.line());
        if (k != 3) {
            throw ParseError(in.line(), "non-triangle face with " + std::to_string(k) + " vertices");
        }
        if (t.size() < 4) {
            throw ParseError(in.line(), "face lists fewer than 3 indices");
        }
        faces.push_back({parse_index(t[1], in.line()), parse_index(t[2], in.line()),
                         parse_index(t[3], in.line())});
        lines.push_back(in.line());
    }
    return build_checked(std::move(vertices), std::move(faces), lines);
}

inline Mesh parse_obj(std::string_view text)
{
    LineTokens in(text);
    std::vector<Vec3> vertices;
    std::vector<Face> faces;
    std::vector<std::size_t> lines;
    while (in.next_line()) {
        const auto& t = in.tokens();
        if (t[0] == "v") {
            if (t.size() < 4) {
                throw ParseError(in.line(), "vertex needs 3 coordinates");
            }
            vertices.emplace_back(parse_double(t[1], in.line()), parse_double(t[2], in.line()),
                                  parse_double(t[3], in.line()));
        } else if (t[0] == "f") {
            if (t.size() != 4) {
                throw ParseError(in.line(), "non-triangle face with " + std::to_string(t.size() - 1) +
                                                " vertices");
            }
            Face f{};
            for (int k = 0; k < 3; ++k) {
                auto tok = t[static_cast<std::size_t>(k) + 1];
                tok = tok.substr(0, tok.find('/'));
                f[static_cast<std::size_t>(k)] = parse_index(tok, in.line()) - 1;
            }
            faces.push_back(f);
            lines.push_back(in.line());
        }
        // other record types (vn, vt, o, g, s, ...) carry nothing we use
    }
    return build_checked(std::move(vertices), std::move(faces), lines);
}

}  // namespace detail

/** @brief Parse OFF or the v/f subset of OBJ */
inline Mesh load_mesh(std::string_view text, MeshFormat format)
{
    return format == MeshFormat::OFF ? detail::parse_off(text) : detail::parse_obj(text);
}

/** @brief Format from file extension (.off / .obj, case-insensitive) */
inline MeshFormat format_from_path(const std::filesystem::path& path)
{
    auto ext = path.extension().string();
    for (auto& c : ext) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (ext == ".off") {
        return MeshFormat::OFF;
    }
    if (ext == ".obj") {
        return MeshFormat::OBJ;
    }
    throw MeshError("unrecognized mesh extension '" + ext + "'");
}

inline Mesh load_mesh_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MeshError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_mesh(buf.str(), format_from_path(path));
}

inline std::string to_off(const Mesh& mesh)
{
    std::ostringstream out;
    out << std::setprecision(17);
    out << "OFF\n" << mesh.num_vertices() << ' ' << mesh.num_faces() << " 0\n";
    for (const auto& p : mesh.vertices()) {
        out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
    }
    for (const auto& f : mesh.faces()) {
        out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
    }
    return out.str();
}

inline std::string to_obj(const Mesh& mesh)
{
    std::ostringstream out;
    out << std::setprecision(17);
    for (const auto& p : mesh.vertices()) {
        out << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
    }
    for (const auto& f : mesh.faces()) {
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    }
    return out.str();
}

inline void save_mesh_file(const Mesh& mesh, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw MeshError("cannot write " + path.string());
    }
    out << (format_from_path(path) == MeshFormat::OFF ? to_off(mesh) : to_obj(mesh));
    if (!out) {
        throw MeshError("write failed for " + path.string());
    }
}

}  // namespace ltl

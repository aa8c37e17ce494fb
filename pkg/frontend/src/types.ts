/** Response shapes of the catalog HTTP API. */

export interface ResultItem {
  sw_id: string;
  name: string;
  description: string;
  homepage: string | null;
  total_references: number;
  quality_ok: boolean;
  score?: number;
}

export interface Paginated<T> {
  items: T[];
  page: number;
  per_page: number;
  total: number;
}

export interface MscEntry {
  count: number;
  frequency: number;
}

export interface SimilarEntry {
  sw_id: string;
  name: string;
  score: number;
}

export interface PublicationEntry {
  pub_id: string;
  title: string;
  authors: string[];
  year: number;
  link: string;
}

export interface Profile {
  keyword_cloud: [string, number][];
  msc_distribution: Record<string, MscEntry>;
  references_by_year: Record<string, number>;
  total_references: number;
  quality_ok: boolean;
  similar: SimilarEntry[];
}

export interface DetailDoc {
  sw_id: string;
  name: string;
  aliases: string[];
  homepage?: string;
  description: string;
  version?: string;
  license?: string;
  programming_languages: string[];
  dependencies: string[];
  provenance: string;
  profile: Profile;
  publications: PublicationEntry[];
  homepage_status?: { outcome: string; checked_at: string };
}

export interface StatsDoc {
  software_count: number;
  publication_count: number;
  top_msc_sections: { section: string; count: number }[];
}

export interface HealthDoc {
  status: string;
  built_at: string;
  format_version: number;
  software_count: number;
  publication_count: number;
}

export interface ApiErrorDoc {
  error_code: string;
  message: string;
}

export interface BrowseDoc {
  items: ResultItem[];
}

import os

from simpson_nd import create_app

app = create_app()

if __name__ == "__main__":
    # Use `flask --app simpson_nd.run run` for the reloader
    app.run(host="0.0.0.0", port=int(os.environ.get("PORT", "5000")), debug=False)
